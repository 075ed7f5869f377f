#include "dlab/phase.hpp"

#include "dlab/errors.hpp"
#include "dlab/parallel.hpp"

#include <algorithm>
#include <cmath>

namespace dlab {

namespace {

double euclid_norm(const std::vector<double>& v) {
    double s = 0.0;
    for (double c : v) s += c * c;
    return std::sqrt(s);
}

// Counter-based generator: independent, reproducible streams per sample index.
struct SplitMix64 {
    std::uint64_t state;
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d4a4ca9b0e18e5ULL;
        return z ^ (z >> 31);
    }
    double uniform01() { return (next() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
    double gaussian() {
        double u1 = std::max(uniform01(), 1e-300);
        double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }
};

std::vector<double> random_direction(SplitMix64& rng, int dim) {
    std::vector<double> d(static_cast<size_t>(dim));
    double norm = 0.0;
    do {
        for (double& c : d) c = rng.gaussian();
        norm = euclid_norm(d);
    } while (norm < 1e-12);
    for (double& c : d) c /= norm;
    return d;
}

} // namespace

double PhaseFunction::operator()(double xi) const {
    if (dim != 1) throw BadParams("PhaseFunction '" + label + "' is not one-dimensional");
    return symbol_nd({xi});
}

double PhaseFunction::majorant(double x) const {
    if (dim != 1) throw BadParams("PhaseFunction '" + label + "' is not one-dimensional");
    return majorant_nd({x});
}

PhaseFunction monomial_phase(int k) {
    if (k < 1) throw BadParams("monomial phase: k must be a positive integer");
    PhaseFunction p;
    p.symbol_nd = [k](const std::vector<double>& x) { return std::pow(x[0], k); };
    // Sharp local Lipschitz factor |Phi'(x)| = k |x|^{k-1}.
    p.majorant_nd = [k](const std::vector<double>& x) {
        return k * std::pow(std::abs(x[0]), k - 1);
    };
    p.dim = 1;
    p.holder_exponent = static_cast<double>(k);
    p.growth_order = k - 1 > 0 ? k - 1 : 1;
    p.label = "monomial(" + std::to_string(k) + ")";
    return p;
}

PhaseFunction radial_phase(int k, int n) {
    if (k < 1 || n < 1) throw BadParams("radial phase: k and n must be positive");
    PhaseFunction p;
    p.symbol_nd = [k](const std::vector<double>& x) {
        return std::pow(euclid_norm(x), k);
    };
    p.majorant_nd = [k](const std::vector<double>& x) {
        return k * std::pow(euclid_norm(x), k - 1);
    };
    p.dim = n;
    p.holder_exponent = static_cast<double>(k);
    p.growth_order = k - 1 > 0 ? k - 1 : 1;
    p.label = "radial(" + std::to_string(k) + "," + std::to_string(n) + ")";
    return p;
}

PhaseFunction zk_phase(int n) {
    if (n < 2) throw BadParams("zk phase: needs n >= 2");
    PhaseFunction p;
    p.symbol_nd = [](const std::vector<double>& x) {
        double rest2 = 0.0;
        for (size_t i = 1; i < x.size(); ++i) rest2 += x[i] * x[i];
        return x[0] * x[0] * x[0] + x[0] * rest2;
    };
    // |grad Phi| <= 3|x|^2 + |x|^2 + 2|x|^2 = 6|x|^2 is a safe majorant factor.
    p.majorant_nd = [](const std::vector<double>& x) {
        double r = euclid_norm(x);
        return 6.0 * r * r;
    };
    p.dim = n;
    p.holder_exponent = 3.0;
    p.growth_order = 2;
    p.label = "zk(" + std::to_string(n) + ")";
    return p;
}

PhaseFunction kdv_phase(double a) {
    if (a == 0.0) throw BadParams("kdv phase: a must be nonzero");
    PhaseFunction p;
    p.symbol_nd = [a](const std::vector<double>& x) { return a * x[0] * x[0] * x[0]; };
    p.majorant_nd = [a](const std::vector<double>& x) {
        return 3.0 * std::abs(a) * x[0] * x[0];
    };
    p.dim = 1;
    p.holder_exponent = 3.0;
    p.growth_order = 2;
    p.label = "kdv(" + std::to_string(a) + ")";
    return p;
}

PhaseFunction kawahara_phase(double beta, double gamma) {
    if (gamma == 0.0) throw BadParams("kawahara phase: gamma must be nonzero");
    PhaseFunction p;
    p.symbol_nd = [beta, gamma](const std::vector<double>& x) {
        double xi = x[0];
        return -gamma * std::pow(xi, 5) + beta * std::pow(xi, 3);
    };
    p.majorant_nd = [beta, gamma](const std::vector<double>& x) {
        double xi = std::abs(x[0]);
        return 5.0 * std::abs(gamma) * std::pow(xi, 4) + 3.0 * std::abs(beta) * xi * xi;
    };
    p.dim = 1;
    p.holder_exponent = 5.0;
    p.growth_order = 4;
    p.label = "kawahara(" + std::to_string(beta) + "," + std::to_string(gamma) + ")";
    return p;
}

PhaseFunction ost_phase(double eta) {
    if (!(eta > 0.0)) throw BadParams("ost phase: eta must be positive");
    PhaseFunction p;
    p.symbol_nd = [eta](const std::vector<double>& x) {
        double xi = x[0];
        double axi = std::abs(xi);
        return -xi * xi * xi - eta * (axi - axi * axi * axi);
    };
    p.majorant_nd = [eta](const std::vector<double>& x) {
        double axi = std::abs(x[0]);
        return (3.0 + 3.0 * eta) * axi * axi + eta;
    };
    p.dim = 1;
    p.holder_exponent = 3.0;
    p.growth_order = 2;
    p.label = "ost(" + std::to_string(eta) + ")";
    return p;
}

PhaseFunction builtin_phase(const std::string& name,
                            const std::map<std::string, double>& params) {
    auto get = [&params](const std::string& key, double fallback) {
        auto it = params.find(key);
        return it == params.end() ? fallback : it->second;
    };
    if (name == "monomial") return monomial_phase(static_cast<int>(get("k", 3)));
    if (name == "radial")
        return radial_phase(static_cast<int>(get("k", 2)), static_cast<int>(get("n", 1)));
    if (name == "zk") return zk_phase(static_cast<int>(get("n", 2)));
    if (name == "kdv") return kdv_phase(get("a", 1.0));
    if (name == "kawahara") return kawahara_phase(get("beta", 1.0), get("gamma", -1.0));
    if (name == "ost") return ost_phase(get("eta", 1.0));
    throw UnknownPhase("unknown phase '" + name + "'");
}

ConditionReport verify_conditions(const PhaseFunction& phi, double sample_radius,
                                  long n_samples, std::uint64_t seed) {
    if (n_samples < 1000)
        throw BadParams("verify_conditions: need at least 1000 samples");
    if (!(sample_radius > 0.0))
        throw BadParams("verify_conditions: sample_radius must be positive");

    const int dim = phi.dim;
    const double a = phi.holder_exponent;

    std::vector<double> lip(static_cast<size_t>(n_samples), 0.0);
    std::vector<double> hoel(static_cast<size_t>(n_samples), 0.0);
    std::vector<double> grow(static_cast<size_t>(n_samples), 0.0);

#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(parallel::max_threads())
#endif
    for (long i = 0; i < n_samples; ++i) {
        SplitMix64 rng{seed + 0x1000ULL * static_cast<std::uint64_t>(i)};

        // Base point x, uniform in the ball of the given radius.
        std::vector<double> x = random_direction(rng, dim);
        double rx = sample_radius * std::pow(rng.uniform01(), 1.0 / dim);
        for (double& c : x) c *= rx;
        double xnorm = euclid_norm(x);

        double phix = phi.symbol_nd(x);
        double g = phi.majorant_nd(x);

        // Near pair: |x - y| <= |x|.
        if (xnorm > 1e-9) {
            std::vector<double> d = random_direction(rng, dim);
            double dist = xnorm * rng.uniform(1e-6, 1.0);
            std::vector<double> y = x;
            for (int c = 0; c < dim; ++c) y[static_cast<size_t>(c)] += dist * d[static_cast<size_t>(c)];
            double diff = std::abs(phix - phi.symbol_nd(y));
            double denom = g * dist;
            if (denom > 1e-300) lip[static_cast<size_t>(i)] = diff / denom;
        }

        // Far pair: |x - y| >= |x|.
        {
            std::vector<double> d = random_direction(rng, dim);
            double dist = xnorm + rng.uniform01() * 2.0 * sample_radius;
            std::vector<double> y = x;
            for (int c = 0; c < dim; ++c) y[static_cast<size_t>(c)] += dist * d[static_cast<size_t>(c)];
            double diff = std::abs(phix - phi.symbol_nd(y));
            if (dist > 1e-300) hoel[static_cast<size_t>(i)] = diff / std::pow(dist, a);
            double ynorm = euclid_norm(y);
            grow[static_cast<size_t>(i)] = std::abs(phi.symbol_nd(y)) / (1.0 + std::pow(ynorm, a));
        }
    }

    ConditionReport rep;
    rep.label = phi.label;
    rep.dim = dim;
    rep.n_samples = n_samples;
    rep.sample_radius = sample_radius;
    rep.seed = seed;
    for (long i = 0; i < n_samples; ++i) {
        rep.lipschitz_ratio_max = std::max(rep.lipschitz_ratio_max, lip[static_cast<size_t>(i)]);
        rep.holder_ratio_max = std::max(rep.holder_ratio_max, hoel[static_cast<size_t>(i)]);
        rep.growth_ratio_max = std::max(rep.growth_ratio_max, grow[static_cast<size_t>(i)]);
    }
    rep.pass = std::isfinite(rep.lipschitz_ratio_max) && std::isfinite(rep.holder_ratio_max) &&
               std::isfinite(rep.growth_ratio_max);
    return rep;
}

} // namespace dlab
