#include "dlab/blowup.hpp"

#include "dlab/errors.hpp"
#include "dlab/parallel.hpp"
#include "dlab/testfuncs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dlab {

BlowupData build_blowup_data(const ModelSpec& model, GridPtr grid, double sigma, int J) {
    if (!(sigma > 0.0)) throw BadParams("build_blowup_data: sigma must be positive");
    if (J < 3) throw BadParams("build_blowup_data: J must be at least 3");
    if (model.kind == ModelSpec::Kind::Kawahara || model.kind == ModelSpec::Kind::FifthOrder) {
        double beta = model.constants.at("beta");
        double gamma = model.constants.at("gamma");
        if (!(gamma < 0.0) || !(3.0 * beta + 10.0 * gamma > 0.0))
            throw HypothesisViolated(
                "build_blowup_data: fifth-order dispersion needs gamma < 0 and "
                "3 beta + 10 gamma > 0");
    }

    BlowupData data;
    data.model_label = model.label;
    data.sigma = sigma;
    data.J = J;
    for (int j = 1; j <= J; ++j)
        data.alphas.push_back(std::exp(-static_cast<double>(j) * j));

    const bool pair = model.kind == ModelSpec::Kind::HirotaSatsuma;
    for (int c = 0; c < model.components; ++c) {
        Field prof = pair ? Field::sample(grid, [](double x) { return profiles::exp_kink(x); })
                          : Field::sample(grid, [](double x) { return profiles::kink(x); });
        Field acc = Field::zero(grid, Repr::Spectral);
        Field prof_spec = prof.to_spectral();
        for (int j = 1; j <= J; ++j)
            acc += model_propagate(model, c, -sigma * j, prof_spec) * data.alphas[static_cast<size_t>(j - 1)];
        data.profile.push_back(std::move(prof));
        data.assembled.push_back(acc.to_physical());
    }
    return data;
}

namespace {

// Forward 4-point one-sided stencils; the backward version mirrors signs for
// odd derivative orders. Leading error order: h^3 for the first derivative,
// h^1 for the third.
double one_sided(const Field& phys, int j0, int step, int order, double h) {
    auto v = [&phys](int j) { return phys.values()[static_cast<size_t>(j)].real(); };
    double f0 = v(j0), f1 = v(j0 + step), f2 = v(j0 + 2 * step), f3 = v(j0 + 3 * step);
    double sgn = step > 0 ? 1.0 : -1.0;
    if (order == 1) return sgn * (-11.0 * f0 + 18.0 * f1 - 9.0 * f2 + 2.0 * f3) / (6.0 * h);
    return sgn * (-f0 + 3.0 * f1 - 3.0 * f2 + f3) / (h * h * h);
}

// Two Richardson levels on estimates at h, h/2, h/4, ... with known leading
// error order p (then p+1).
double richardson(std::vector<double> d, const std::vector<double>& h, int p,
                  double* spread) {
    for (int level = 0; level < 2 && d.size() >= 2; ++level) {
        std::vector<double> next;
        for (size_t i = 0; i + 1 < d.size(); ++i) {
            double r = h[i] / h[i + 1];
            double rp = std::pow(r, p + level);
            next.push_back((rp * d[i + 1] - d[i]) / (rp - 1.0));
        }
        if (level == 0 && spread) {
            double lo = *std::min_element(next.begin(), next.end());
            double hi = *std::max_element(next.begin(), next.end());
            *spread = hi - lo;
        }
        d = std::move(next);
    }
    return d.back();
}

} // namespace

JumpEstimate detect_derivative_jump(const Field& f, int order, double x0,
                                    const std::vector<double>& h_list) {
    if (order != 1 && order != 3)
        throw BadParams("detect_derivative_jump: order must be 1 or 3");
    if (h_list.size() < 3)
        throw GridTooCoarse("detect_derivative_jump: need at least 3 h levels");
    const Grid1D& g = f.grid();
    for (size_t i = 0; i < h_list.size(); ++i) {
        if (h_list[i] < 2.0 * g.dx() - 1e-12)
            throw GridTooCoarse("detect_derivative_jump: h below 2 dx");
        if (i > 0 && !(h_list[i] < h_list[i - 1]))
            throw BadParams("detect_derivative_jump: h_list must be decreasing");
    }

    Field phys = f.to_physical();
    int j0 = static_cast<int>(std::lround((x0 + 0.5 * g.length()) / g.dx()));
    if (j0 < 0 || j0 >= g.n())
        throw BadParams("detect_derivative_jump: x0 outside the grid");

    std::vector<double> hs, dplus, dminus;
    for (double h : h_list) {
        int m = std::max(1, static_cast<int>(std::lround(h / g.dx())));
        double he = m * g.dx();
        if (j0 + 3 * m >= g.n() || j0 - 3 * m < 0)
            throw GridTooCoarse("detect_derivative_jump: stencil leaves the grid");
        hs.push_back(he);
        dplus.push_back(one_sided(phys, j0, m, order, he));
        dminus.push_back(one_sided(phys, j0, -m, order, he));
    }
    int p = order == 1 ? 3 : 1;
    double spread_p = 0.0, spread_m = 0.0;
    double dp = richardson(dplus, hs, p, &spread_p);
    double dm = richardson(dminus, hs, p, &spread_m);
    return {dp - dm, std::abs(spread_p) + std::abs(spread_m)};
}

SingularityReport run_blowup_experiment(const ModelSpec& model, const BlowupData& data,
                                        bool nonlinear, const std::vector<double>& t_probe,
                                        const SolverConfig& cfg) {
    if (t_probe.empty()) throw BadParams("run_blowup_experiment: probes required");
    const Grid1D& g = data.assembled.front().grid();
    const int order = model.kind == ModelSpec::Kind::HirotaSatsuma ? 1 : 3;
    const std::vector<double> h_list = {8.0 * g.dx(), 4.0 * g.dx(), 2.0 * g.dx()};

    SingularityReport rep;
    rep.derivative_order = order;
    rep.times = t_probe;
    rep.jumps.resize(t_probe.size());
    rep.confidences.resize(t_probe.size());

    auto is_resonant = [&](double t) {
        double ratio = t / data.sigma;
        double nearest = std::round(ratio);
        return nearest >= 1.0 && nearest <= data.J && std::abs(ratio - nearest) < 1e-9;
    };
    bool has_off = false;
    for (double t : t_probe) {
        rep.resonant.push_back(is_resonant(t));
        has_off = has_off || !is_resonant(t);
    }
    if (!has_off)
        throw BadParams("run_blowup_experiment: need at least one off-resonance probe");

    // States at the probe times.
    std::vector<std::vector<Field>> probe_states(t_probe.size());
    if (!nonlinear) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(parallel::max_threads())
#endif
        for (long i = 0; i < static_cast<long>(t_probe.size()); ++i) {
            std::vector<Field> st;
            for (int c = 0; c < model.components; ++c)
                st.push_back(model_propagate(model, c, t_probe[static_cast<size_t>(i)],
                                             data.assembled[static_cast<size_t>(c)]));
            probe_states[static_cast<size_t>(i)] = std::move(st);
        }
    } else {
        std::vector<double> sorted = t_probe;
        std::sort(sorted.begin(), sorted.end());
        std::vector<Field> state = data.assembled;
        double t_now = 0.0;
        for (double t : sorted) {
            if (t > t_now) {
                SolverConfig seg = cfg;
                seg.t_end = t - t_now;
                seg.store_every = 1 << 20; // keep only the segment end
                Trajectory part = evolve(model, state, seg);
                state = part.states.back();
                t_now = t;
            }
            for (size_t i = 0; i < t_probe.size(); ++i)
                if (t_probe[i] == t) probe_states[i] = state;
        }
    }

    for (size_t i = 0; i < t_probe.size(); ++i) {
        for (int c = 0; c < model.components; ++c) {
            JumpEstimate je =
                detect_derivative_jump(probe_states[i][static_cast<size_t>(c)], order, 0.0, h_list);
            rep.jumps[i].push_back(je.jump);
            rep.confidences[i].push_back(je.confidence);
        }
    }

    for (size_t i = 0; i < t_probe.size(); ++i)
        if (!rep.resonant[i])
            for (double j : rep.jumps[i]) rep.baseline = std::max(rep.baseline, std::abs(j));

    for (size_t i = 0; i < t_probe.size(); ++i) {
        bool all_exceed = true;
        for (double j : rep.jumps[i])
            all_exceed = all_exceed && std::abs(j) > 10.0 * rep.baseline;
        rep.verdicts.push_back(all_exceed ? Verdict::Singular : Verdict::Smooth);
    }
    return rep;
}

NormReport analyze_smoothing(const ModelSpec& model, const Trajectory& traj, double s,
                             const SmoothingConfig& cfg) {
    traj.validate();
    if (traj.size() < 2) throw EmptyTrajectory("analyze_smoothing: need an evolved trajectory");
    const Grid1D& g = traj.states.front().front().grid();
    Trajectory z = duhamel_term(model, traj);

    const double t_end = traj.times.back();
    const double xi_cut = (2.0 / 3.0) * std::abs(g.xi(g.nyquist_index())) * cfg.fit_fraction;
    NormReport rep;
    rep.add("t", t_end);

    for (int c = 0; c < traj.components(); ++c) {
        std::string sfx = traj.components() > 1 ? "[" + std::to_string(c) + "]" : "";
        Field lin = model_propagate(model, c, t_end, traj.states.front()[static_cast<size_t>(c)])
                        .to_spectral();
        Field zf = z.states.back()[static_cast<size_t>(c)].to_spectral();

        double lin_peak = lin.max_abs();
        double z_peak = zf.max_abs();
        if (z_peak < 1e-12 * std::max(lin_peak, 1e-300)) {
            rep.add("xi_min" + sfx, 0.0);
            rep.add("xi_max" + sfx, 0.0);
            rep.add("slope_linear" + sfx, 0.0);
            rep.add("slope_duhamel" + sfx, 0.0);
            rep.add("gain" + sfx, std::numeric_limits<double>::infinity(), true);
            continue;
        }

        // Octave-fraction bins of |fhat| over [xi_lo, xi_cut].
        std::vector<double> centers, lin_mean, z_mean;
        double lo = cfg.xi_lo;
        const double fac = std::pow(2.0, 1.0 / cfg.bins_per_octave);
        double xi_hi_used = lo;
        while (lo * fac <= xi_cut) {
            double hi = lo * fac;
            double sl = 0.0, sz = 0.0;
            long cnt = 0;
            for (int m = 0; m < g.n(); ++m) {
                double axi = std::abs(g.xi(m));
                if (axi < lo || axi >= hi) continue;
                sl += std::abs(lin.values()[static_cast<size_t>(m)]);
                sz += std::abs(zf.values()[static_cast<size_t>(m)]);
                ++cnt;
            }
            if (cnt > 0) {
                double zm = sz / cnt;
                if (zm > cfg.noise_floor * z_peak) {
                    centers.push_back(std::sqrt(lo * hi));
                    lin_mean.push_back(sl / cnt);
                    z_mean.push_back(zm);
                    xi_hi_used = hi;
                }
            }
            lo = hi;
        }
        if (centers.size() < 4 || xi_hi_used / cfg.xi_lo < 31.62)
            throw InsufficientTail("analyze_smoothing: inertial range spans less than 1.5 decades");

        auto fl = fit_power_law(centers, lin_mean, "linear_tail");
        auto fz = fit_power_law(centers, z_mean, "duhamel_tail");
        rep.add("xi_min" + sfx, cfg.xi_lo);
        rep.add("xi_max" + sfx, xi_hi_used);
        rep.add("slope_linear" + sfx, fl.exponent);
        rep.add("slope_duhamel" + sfx, fz.exponent);
        // Both slopes are negative; the gain is how much faster Z decays.
        rep.add("gain" + sfx, fl.exponent - fz.exponent);
        rep.add_fit("linear_tail" + sfx, fl.exponent, fl.constant, fl.r2);
        rep.add_fit("duhamel_tail" + sfx, fz.exponent, fz.constant, fz.r2);
    }
    rep.add("ceiling_s", s);
    return rep;
}

} // namespace dlab
