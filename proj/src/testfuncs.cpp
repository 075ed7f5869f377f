#include "dlab/testfuncs.hpp"

#include "dlab/errors.hpp"

#include <cmath>

namespace dlab {

namespace profiles {

double kink(double x) {
    double a = std::abs(x);
    return 0.5 * std::exp(-2.0 * a) * (1.0 + 2.0 * a);
}

double exp_kink(double x) { return std::exp(-2.0 * std::abs(x)); }

double gaussian(double x, double width) {
    return std::exp(-x * x / (2.0 * width * width));
}

double sech(double x) { return 1.0 / std::cosh(x); }

std::function<double(double)> by_name(const std::string& name) {
    if (name == "kink") return [](double x) { return kink(x); };
    if (name == "gaussian") return [](double x) { return gaussian(x); };
    if (name == "exp") return [](double x) { return exp_kink(x); };
    if (name == "sech") return [](double x) { return sech(x); };
    throw BadParams("unknown data profile '" + name + "'");
}

} // namespace profiles

Field powerlaw_tail_data(GridPtr grid, double s, double amplitude) {
    const int n = grid->n();
    std::vector<cplx> v(static_cast<size_t>(n));
    const double p = -(s + 0.5) / 2.0;
    // Super-Gaussian taper above the usable band keeps the data resolved on
    // the grid; the power-law exponent is untouched below 0.62 ximax.
    const double ximax = std::abs(grid->xi(grid->nyquist_index()));
    const double xi0 = 0.62 * ximax, w = 0.2 * ximax;
    for (int m = 0; m < n; ++m) {
        double xi = grid->xi(m);
        double excess = std::max(0.0, (std::abs(xi) - xi0) / w);
        double taper = std::exp(-32.0 * excess * excess * excess * excess);
        v[static_cast<size_t>(m)] =
            cplx{amplitude * std::pow(1.0 + xi * xi, p) * taper, 0.0};
    }
    // Zero mean: on the periodic box a mean component acts as a background
    // transport that dephases the whole spectrum inside the Duhamel term, a
    // finite-box effect with no counterpart on the line.
    v[0] = cplx{0.0, 0.0};
    // Real and even in xi, so the physical field is real and even.
    Field f(grid, std::move(v), Repr::Spectral);
    return f.to_physical();
}

} // namespace dlab
