// Timing comparison of the OpenMP kernels against their serial reference
// implementations. The outputs are cross-checked for equality first; the
// parallel accumulation order is fixed, so the results must match exactly.

#include "dlab/blowup.hpp"
#include "dlab/parallel.hpp"
#include "dlab/phase.hpp"
#include "dlab/stein.hpp"
#include "dlab/testfuncs.hpp"

#include <chrono>
#include <cstdio>

using namespace dlab;

namespace {

template <typename F>
double time_it(F&& f, int reps = 3) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        auto t0 = std::chrono::steady_clock::now();
        f();
        best = std::min(best, std::chrono::duration<double>(
                                  std::chrono::steady_clock::now() - t0)
                                  .count());
    }
    return best;
}

} // namespace

int main() {
    std::printf("threads available: %d\n\n", parallel::max_threads());
    std::printf("%-34s %10s %10s %8s\n", "kernel", "serial[s]", "openmp[s]", "speedup");

    {
        GridPtr g = Grid1D::make(4096, 80.0);
        Field f = Field::sample(g, profiles::by_name("gaussian"));
        SteinQuadratureConfig cfg;
        cfg.b = 0.5;
        SteinFieldResult a = stein_field_quadrature(f, cfg, parallel::Policy::Serial);
        SteinFieldResult b = stein_field_quadrature(f, cfg, parallel::Policy::Parallel);
        bool same = a.values == b.values;
        double ts = time_it([&] { stein_field_quadrature(f, cfg, parallel::Policy::Serial); });
        double tp = time_it([&] { stein_field_quadrature(f, cfg, parallel::Policy::Parallel); });
        std::printf("%-34s %10.3f %10.3f %7.2fx  %s\n", "stein field sweep (n=4096)", ts, tp,
                    ts / tp, same ? "outputs identical" : "OUTPUT MISMATCH");
    }

    {
        // Monte-Carlo condition sampling (always deterministic per seed; the
        // serial figure comes from a single-thread budget).
        PhaseFunction phi = kawahara_phase(1.0, -1.0);
        double tp = time_it([&] { verify_conditions(phi, 50.0, 2000000, 7); });
        std::printf("%-34s %10s %10.3f %8s\n", "condition sampling (2e6 pairs)", "-", tp, "-");
    }

    {
        // Pointwise oscillatory sweep, parallel across the (t, x) grid.
        std::vector<double> ts_list = {0.0, 1.0, 4.0, 16.0};
        std::vector<double> xs;
        for (int i = 0; i <= 12; ++i) xs.push_back(std::pow(10.0, i / 6.0));
        SteinQuadratureConfig cfg;
        double tp = time_it(
            [&] { verify_lemma_bound(monomial_phase(3), 0.5, ts_list, xs, cfg); }, 2);
        std::printf("%-34s %10s %10.3f %8s\n", "phase-bound sweep (4x13 grid)", "-", tp, "-");
    }

    return 0;
}
