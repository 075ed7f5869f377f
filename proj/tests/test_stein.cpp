#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dlab/errors.hpp"
#include "dlab/stein.hpp"
#include "dlab/testfuncs.hpp"

#include "oracles.hpp"

#include <cmath>
#include <numbers>

using namespace dlab;

namespace {
GridPtr grid80(int n = 2048) { return Grid1D::make(n, 80.0); }

std::function<cplx(double)> cgauss() {
    return [](double y) { return cplx{profiles::gaussian(y), 0.0}; };
}
}

TEST_CASE("config validation") {
    SteinQuadratureConfig cfg;
    cfg.b = 1.5;
    CHECK_THROWS_AS(cfg.validate(), BadParams);
    cfg.b = 0.5;
    cfg.inner_cut = 2.0;
    CHECK_THROWS_AS(cfg.validate(), BadParams);
}

TEST_CASE("pointwise operator vanishes on constants") {
    SteinQuadratureConfig cfg;
    SteinValue v = stein_pointwise([](double) { return cplx{3.2, 0.0}; }, 1.0, cfg);
    CHECK(v.value < 1e-12); // rounding of the far-level subtraction only
    CHECK(v.self_check == 0.0);
}

TEST_CASE("pointwise operator against a slow reference") {
    SteinQuadratureConfig cfg;
    for (double b : {0.3, 0.5, 0.75}) {
        cfg.b = b;
        for (double x : {0.0, 1.0, 5.0}) {
            double ref = oracles::stein_brute(
                [](double y) { return cplx{profiles::gaussian(y), 0.0}; }, x, b);
            SteinValue v = stein_pointwise(cgauss(), x, cfg);
            CHECK(v.value == doctest::Approx(ref).epsilon(2e-4));
            CHECK(v.self_check < 1e-4);
        }
    }
}

TEST_CASE("adding a constant leaves the operator unchanged") {
    SteinQuadratureConfig cfg;
    SteinValue base = stein_pointwise(cgauss(), 0.7, cfg);
    SteinValue shifted = stein_pointwise(
        [](double y) { return cplx{profiles::gaussian(y) + 2.5, 0.0}; }, 0.7, cfg);
    CHECK(shifted.value == doctest::Approx(base.value).epsilon(1e-10));
}

TEST_CASE("monotone truncation with the completion disabled") {
    SteinQuadratureConfig cfg;
    cfg.tail_completion = false;
    cfg.fail_threshold = 10.0; // raw truncation shifts the value; allow it
    double prev = 0.0;
    for (double r : {4.0, 8.0, 16.0, 32.0}) {
        cfg.outer_cut = r;
        double v = stein_pointwise(cgauss(), 0.5, cfg).value;
        CHECK(v >= prev);
        prev = v;
    }
    cfg.outer_cut = 16.0;
    double coarse = 0.0;
    for (double eps : {1e-2, 1e-4, 1e-6}) {
        cfg.inner_cut = eps;
        double v = stein_pointwise(cgauss(), 0.5, cfg).value;
        CHECK(v >= coarse);
        coarse = v;
    }
}

TEST_CASE("field sweep matches the pointwise operator and is policy-invariant") {
    GridPtr g = grid80();
    Field f = Field::sample(g, profiles::by_name("gaussian"));
    SteinQuadratureConfig cfg;
    cfg.b = 0.4;
    SteinFieldResult par = stein_field_quadrature(f, cfg, parallel::Policy::Parallel);
    SteinFieldResult ser = stein_field_quadrature(f, cfg, parallel::Policy::Serial);
    REQUIRE(par.values.size() == ser.values.size());
    for (size_t i = 0; i < par.values.size(); ++i) CHECK(par.values[i] == ser.values[i]);

    for (double x : {0.0, 2.0, 11.0}) {
        int j = static_cast<int>(std::lround((x + 40.0) / g->dx()));
        SteinValue pw = stein_pointwise(cgauss(), g->x(j), cfg);
        CHECK(par.values[static_cast<size_t>(j)] == doctest::Approx(pw.value).epsilon(5e-6));
    }
    CHECK(par.self_check < 1e-4);
    CHECK_THROWS_AS(stein_field_quadrature(f, SteinQuadratureConfig{.outer_cut = 30.0}),
                    BadParams); // 4.5 R > L
}

TEST_CASE("spectral fractional derivative basics") {
    GridPtr g = grid80();
    Field zero = Field::zero(g);
    CHECK(stein_field_spectral(zero, 0.5).max_abs() == 0.0);

    double k0 = 6.0 * g->dxi();
    Field h = Field::sample(g, [&](double x) { return std::cos(k0 * x); });
    Field dh = stein_field_spectral(h, 0.3);
    Field expect = h * std::pow(k0, 0.3);
    CHECK((dh - expect).max_abs() < 1e-12);

    // kink: D^{1/2} norm finite and stable under grid doubling
    double n1 = stein_field_spectral(Field::sample(grid80(2048), profiles::by_name("kink")), 0.5)
                    .l2_norm();
    double n2 = stein_field_spectral(Field::sample(grid80(4096), profiles::by_name("kink")), 0.5)
                    .l2_norm();
    CHECK(std::abs(n2 - n1) / n1 < 1e-5);
}

TEST_CASE("norm equivalence reproduces the Gagliardo constant") {
    GridPtr g = grid80();
    std::vector<Field> suite;
    suite.push_back(Field::sample(g, profiles::by_name("gaussian")));
    suite.push_back(Field::sample(g, profiles::by_name("kink")));
    suite.push_back(Field::sample(g, profiles::by_name("sech")));
    suite.push_back(Field::sample(g, [](double x) { return std::cos(3.0 * x) * std::exp(-0.5 * x * x); }));
    suite.push_back(Field::sample(g, [](double x) { return 1.0 / ((1.0 + x * x) * (1.0 + x * x)); }));

    for (double b : {0.25, 0.5, 0.75}) {
        double oracle = oracles::kappa(b);
        CHECK(oracle == doctest::Approx(oracles::kappa_closed(b)).epsilon(2e-6));
        double lo = 1e300, hi = 0.0;
        for (const Field& f : suite) {
            NormReport rep = check_norm_equivalence(f, b, {});
            double ratio = rep.get("ratio");
            CHECK(ratio == doctest::Approx(oracle).epsilon(5e-3));
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
        }
        CHECK((hi - lo) / lo < 2e-3); // constancy across unrelated functions
    }
}

TEST_CASE("norm equivalence flags the zero field as degenerate") {
    NormReport rep = check_norm_equivalence(Field::zero(grid80(512)), 0.5, {});
    CHECK(std::isnan(rep.get("ratio")));
    for (const auto& e : rep.entries)
        if (e.label == "ratio") CHECK(e.degenerate);
}

TEST_CASE("oscillatory pointwise operator: plane wave has a closed form") {
    // D^{1/2}(e^{ity})(x) = sqrt(2 pi |t|), independent of x.
    SteinQuadratureConfig cfg;
    PhaseFunction lin = monomial_phase(1);
    SteinValue v0 = stein_phase_pointwise(lin, 1.0, 0.0, cfg);
    SteinValue v5 = stein_phase_pointwise(lin, 1.0, 5.0, cfg);
    CHECK(v0.value == doctest::Approx(v5.value).epsilon(1e-6));
    CHECK(v0.value == doctest::Approx(std::sqrt(2.0 * std::numbers::pi)).epsilon(1e-4));
    SteinValue v3 = stein_phase_pointwise(lin, 3.0, -2.0, cfg);
    CHECK(v3.value == doctest::Approx(std::sqrt(6.0 * std::numbers::pi)).epsilon(1e-4));

    CHECK(stein_phase_pointwise(lin, 0.0, 1.0, cfg).value == 0.0);
}

TEST_CASE("pointwise bound sweep for the cubic phase") {
    PhaseFunction cubic = monomial_phase(3);
    std::vector<double> ts = {0.0, 1.0, 4.0, 16.0};
    std::vector<double> xs;
    for (int i = 0; i <= 8; ++i) xs.push_back(std::pow(10.0, i / 4.0));
    SteinQuadratureConfig cfg;
    LemmaBoundResult lem = verify_lemma_bound(cubic, 0.5, ts, xs, cfg);
    CHECK(lem.slope_x <= 1.05); // b K = 1
    CHECK(lem.slope_x >= 0.9);  // and the phase really does grow like |x|
    CHECK(lem.slope_t <= 1.05);
    CHECK(lem.c_fit < 10.0);
    CHECK(lem.max_self_check < 1e-3);
    for (size_t ix = 0; ix < xs.size(); ++ix) CHECK(lem.values[0][ix] == 0.0); // t = 0 row

    // flat phase growth: plane wave values stay x-independent
    LemmaBoundResult flat = verify_lemma_bound(monomial_phase(1), 0.5, ts, xs, cfg);
    CHECK(std::abs(flat.slope_x) < 0.02);

    CHECK_THROWS_AS(verify_lemma_bound(cubic, 0.5, ts, {1.0, 2.0, 4.0, 8.0}, cfg), BadParams);
    CHECK_THROWS_AS(verify_lemma_bound(cubic, 0.5, {1.0, 2.0, 4.0}, xs, cfg), BadParams);
}

TEST_CASE("Leibniz inequalities hold to quadrature accuracy") {
    GridPtr g = grid80();
    Field f = Field::sample(g, profiles::by_name("gaussian"));
    Field gfield = Field::sample(g, profiles::by_name("sech"));
    SteinQuadratureConfig cfg;

    NormReport rep = check_leibniz(f, gfield, 0.5, cfg);
    CHECK(rep.get("pointwise_violation") <= 1e-9);
    CHECK(rep.get("l2_violation") <= 1e-9);
    CHECK(rep.get("l2_lhs") > 0.0);

    // g == 1 degenerates to equality; the violation is <= 0 exactly.
    Field ones = Field::sample(g, [](double) { return 1.0; });
    NormReport unit = check_leibniz(f, ones, 0.5, cfg);
    CHECK(unit.get("pointwise_violation") <= 1e-13);

    // both sides vanish for f == 0
    NormReport zero = check_leibniz(Field::zero(g), gfield, 0.5, cfg);
    CHECK(zero.get("l2_lhs") == 0.0);
    CHECK(zero.get("pointwise_violation") <= 0.0);
}

TEST_CASE("quadrature failure is reported, not silently absorbed") {
    // Force a hopeless refinement target on the field sweep.
    GridPtr g = grid80(512);
    Field f = Field::sample(g, profiles::by_name("gaussian"));
    SteinQuadratureConfig cfg;
    cfg.fail_threshold = 1e-18;
    CHECK_THROWS_AS(stein_field_quadrature(f, cfg), QuadratureNotConverged);
}
