#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dlab/blowup.hpp"
#include "dlab/errors.hpp"
#include "dlab/norms.hpp"
#include "dlab/testfuncs.hpp"

#include <cmath>

using namespace dlab;

namespace {
ModelSpec blowup_kawahara() { return make_kawahara(1.0, 1.0, -0.1); } // gamma<0, 3b+10g>0
}

TEST_CASE("assembled data invariants") {
    GridPtr g = Grid1D::make(4096, 80.0);
    ModelSpec m = blowup_kawahara();
    BlowupData data = build_blowup_data(m, g, 0.5, 6);

    // profile matches the closed form at every grid point
    Field expect = Field::sample(g, profiles::by_name("kink"));
    CHECK((data.profile[0] - expect).max_abs() < 1e-10);
    CHECK(data.profile[0].values()[static_cast<size_t>(g->origin_index())].real() ==
          doctest::Approx(0.5).epsilon(1e-14));

    // assembled sum recomputes to itself
    Field acc = Field::zero(g, Repr::Spectral);
    for (int j = 1; j <= data.J; ++j)
        acc += model_propagate(m, 0, -data.sigma * j, data.profile[0].to_spectral()) *
               data.alphas[static_cast<size_t>(j - 1)];
    CHECK((acc.to_physical() - data.assembled[0]).max_abs() < 1e-12);

    // truncation is negligible: alpha_{J+1} ||profile|| << ||assembled||
    double tail = std::exp(-49.0) * data.profile[0].l2_norm();
    CHECK(tail < 1e-14 * data.assembled[0].l2_norm());

    // forward group at t = sigma peels off alpha_1 profile; the leftover is
    // the evolved j >= 2 series, whose norm is alpha_2/alpha_1 = e^{-3} of it
    BlowupData one = build_blowup_data(m, g, 0.7, 3);
    Field rec = model_propagate(m, 0, 0.7, one.assembled[0]);
    Field a1 = one.profile[0] * one.alphas[0];
    double leftover = (rec - a1).l2_norm() / a1.l2_norm();
    CHECK(leftover == doctest::Approx(std::exp(-3.0)).epsilon(0.02));
    // a genuinely single-term assembly inverts exactly
    Field single = model_propagate(m, 0, -0.7, one.profile[0]) * one.alphas[0];
    Field rec2 = model_propagate(m, 0, 0.7, single);
    CHECK((rec2 - a1).max_abs() < 1e-10);

    CHECK_THROWS_AS(build_blowup_data(m, g, -1.0, 6), BadParams);
    CHECK_THROWS_AS(build_blowup_data(m, g, 0.5, 2), BadParams);
    // the sign conditions: gamma < 0 and 3 beta + 10 gamma > 0
    CHECK_THROWS_AS(build_blowup_data(make_kawahara(1.0, 1.0, -1.0), g, 0.5, 6),
                    HypothesisViolated);
}

TEST_CASE("sobolev ceiling transfers from the profile to the assembled data") {
    // phases are unitary mode by mode, so the assembled spectrum has the
    // same |.|-envelope scale as the profile: H^{3.4} increments shrink
    // under refinement while H^{3.6} increments stay above 5%.
    ModelSpec m = blowup_kawahara();
    auto norm_at = [&](int n, double s) {
        GridPtr g = Grid1D::make(n, 80.0);
        return sobolev_norm(build_blowup_data(m, g, 0.5, 6).assembled[0], s);
    };
    double lo1 = norm_at(4096, 3.4), lo2 = norm_at(8192, 3.4);
    double hi1 = norm_at(4096, 3.6), hi2 = norm_at(8192, 3.6);
    CHECK(hi2 / hi1 - 1.0 > 0.05);
    CHECK(lo2 / lo1 - 1.0 < hi2 / hi1 - 1.0);
}

TEST_CASE("jump detector oracles") {
    GridPtr g = Grid1D::make(8192, 80.0);
    std::vector<double> hs = {8.0 * g->dx(), 4.0 * g->dx(), 2.0 * g->dx()};

    // smooth input: order-3 jump vanishes at detector accuracy
    Field gauss = Field::sample(g, profiles::by_name("gaussian"));
    Field d3 = derivative(gauss, 3).to_physical();
    JumpEstimate smooth = detect_derivative_jump(gauss, 3, 0.0, hs);
    CHECK(std::abs(smooth.jump) < 1e-3 * d3.max_abs());

    // kink: third derivative jumps by exactly 16 at the origin
    Field kink = Field::sample(g, profiles::by_name("kink"));
    JumpEstimate j3 = detect_derivative_jump(kink, 3, 0.0, hs);
    CHECK(j3.jump == doctest::Approx(16.0).epsilon(0.05));
    // first derivative is continuous there
    JumpEstimate j1 = detect_derivative_jump(kink, 1, 0.0, hs);
    CHECK(std::abs(j1.jump) < 1e-4);

    // e^{-2|x|}: first derivative jumps by -4
    Field ek = Field::sample(g, profiles::exp_kink);
    JumpEstimate e1 = detect_derivative_jump(ek, 1, 0.0, hs);
    CHECK(e1.jump == doctest::Approx(-4.0).epsilon(0.05));

    CHECK_THROWS_AS(detect_derivative_jump(kink, 3, 0.0, {8.0 * g->dx(), 4.0 * g->dx()}),
                    GridTooCoarse);
    CHECK_THROWS_AS(detect_derivative_jump(kink, 3, 0.0,
                                           {4.0 * g->dx(), 2.0 * g->dx(), 0.5 * g->dx()}),
                    GridTooCoarse);
    CHECK_THROWS_AS(detect_derivative_jump(kink, 2, 0.0, hs), BadParams);
}

TEST_CASE("linear flow dichotomy for the fifth-order data") {
    // Wide box, fine grid: on the torus the dispersed ripples of the
    // off-resonance terms recirculate instead of radiating away, and the
    // n = 2 resonance (16 e^{-4} ~ 0.29) must clear both that noise floor
    // (~ 1/sqrt(L)) and the detector's stencil systematic (~ dx^3).
    GridPtr g = Grid1D::make(524288, 1280.0);
    ModelSpec m = blowup_kawahara();
    BlowupData data = build_blowup_data(m, g, 0.5, 6);
    SingularityReport rep =
        run_blowup_experiment(m, data, false, {0.25, 0.5, 0.75, 1.0}, {});

    REQUIRE(rep.verdicts.size() == 4);
    CHECK(rep.verdicts[0] == Verdict::Smooth);
    CHECK(rep.verdicts[1] == Verdict::Singular);
    CHECK(rep.verdicts[2] == Verdict::Smooth);
    CHECK(rep.verdicts[3] == Verdict::Singular);

    // resonant jumps are 16 alpha_n within 10%, decaying like exp(-n^2)
    double j1 = rep.jumps[1][0], j2 = rep.jumps[3][0];
    CHECK(j1 == doctest::Approx(16.0 * std::exp(-1.0)).epsilon(0.10));
    CHECK(j2 == doctest::Approx(16.0 * std::exp(-4.0)).epsilon(0.10));
    CHECK(j2 / j1 == doctest::Approx(std::exp(-3.0)).epsilon(0.15));
    CHECK(rep.baseline < 0.1 * std::abs(j1));

    // t = 0 (the assembled data itself) is smooth
    SingularityReport at0 = run_blowup_experiment(m, data, false, {0.0, 0.5}, {});
    CHECK(at0.verdicts[0] == Verdict::Smooth);

    CHECK_THROWS_AS(run_blowup_experiment(m, data, false, {0.5, 1.0}, {}), BadParams);
    CHECK_THROWS_AS(run_blowup_experiment(m, data, false, {}, {}), BadParams);
}

TEST_CASE("linear flow dichotomy for the Hirota-Satsuma pair") {
    GridPtr g = Grid1D::make(8192, 80.0);
    ModelSpec m = make_hirota_satsuma(0.5, 1.0);
    BlowupData data = build_blowup_data(m, g, 0.5, 6);
    SingularityReport rep =
        run_blowup_experiment(m, data, false, {0.25, 0.5, 0.75}, {});
    CHECK(rep.derivative_order == 1);
    CHECK(rep.verdicts[0] == Verdict::Smooth);
    CHECK(rep.verdicts[1] == Verdict::Singular);
    CHECK(rep.verdicts[2] == Verdict::Smooth);
    // both components break with the first-derivative jump -4 alpha_1
    double expect = -4.0 * std::exp(-1.0);
    CHECK(rep.jumps[1][0] == doctest::Approx(expect).epsilon(0.10));
    CHECK(rep.jumps[1][1] == doctest::Approx(expect).epsilon(0.10));
}

TEST_CASE("nonlinear runs preserve the singular/smooth verdicts") {
    // reduced-size variant of the full acceptance run
    GridPtr g = Grid1D::make(4096, 80.0);
    ModelSpec m = blowup_kawahara();
    BlowupData data = build_blowup_data(m, g, 0.5, 4);
    SingularityReport lin =
        run_blowup_experiment(m, data, false, {0.25, 0.5}, {});

    double scale = 0.1 / sobolev_norm(data.assembled[0], 2.0);
    data.assembled[0] *= scale;
    SolverConfig cfg;
    cfg.dt = 1e-3;
    SingularityReport non = run_blowup_experiment(m, data, true, {0.25, 0.5}, cfg);
    REQUIRE(non.verdicts.size() == lin.verdicts.size());
    for (size_t i = 0; i < lin.verdicts.size(); ++i)
        CHECK(non.verdicts[i] == lin.verdicts[i]);
    // the resonant jump scales with the data
    CHECK(non.jumps[1][0] == doctest::Approx(scale * lin.jumps[1][0]).epsilon(0.05));
}

TEST_CASE("spectral-tail smoothing analysis") {
    GridPtr g = Grid1D::make(2048, 80.0);
    ModelSpec m = make_hirota_satsuma(0.5, 1.0);
    double s = 1.5;
    Field base = powerlaw_tail_data(g, s);
    base *= 0.25 / sobolev_norm(base, s);

    // linear run: the Duhamel term vanishes and the gain degenerates
    ModelSpec lin = m;
    lin.nonlinearity_scale = 0.0;
    SolverConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_end = 0.05;
    cfg.store_every = 1 << 20;
    Trajectory ltraj = evolve(lin, {base, base}, cfg);
    NormReport lrep = analyze_smoothing(lin, ltraj, s);
    CHECK(std::isinf(lrep.get("gain[0]")));

    // nonlinear run: strictly positive gain on both components
    cfg.dt = 5e-6;
    Trajectory traj = evolve(m, {base, base}, cfg);
    NormReport rep = analyze_smoothing(m, traj, s);
    CHECK(rep.get("gain[0]") > 1.0 / 6.0 - 0.15);
    CHECK(rep.get("gain[1]") > 1.0 / 6.0 - 0.15);
    CHECK(rep.get("slope_linear[0]") < -1.5);
    CHECK(rep.get("xi_max[0]") / rep.get("xi_min[0]") > 31.6);

    // too-coarse grid: the inertial range is too short
    GridPtr small = Grid1D::make(512, 80.0);
    Field sdata = powerlaw_tail_data(small, s) * 0.05;
    Trajectory straj = evolve(m, {sdata, sdata}, cfg);
    CHECK_THROWS_AS(analyze_smoothing(m, straj, s), InsufficientTail);
}
