#include "dlab/multiplier.hpp"

#include "dlab/errors.hpp"
#include "dlab/phase.hpp"

#include <cmath>

namespace dlab {

Field apply_multiplier(const Multiplier& m, const Field& f) {
    Field s = f.to_spectral();
    const Grid1D& g = f.grid();
    const int n = g.n();
    const int nyq = g.nyquist_index();
    for (int k = 0; k < n; ++k) {
        if (k == nyq && m.zero_nyquist) {
            s.values()[static_cast<size_t>(k)] = cplx{0.0, 0.0};
            continue;
        }
        cplx v = m.symbol(g.xi(k));
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw NonFiniteSymbol("multiplier '" + m.label + "' is singular at xi=" +
                                  std::to_string(g.xi(k)));
        s.values()[static_cast<size_t>(k)] *= v;
    }
    return f.repr() == Repr::Physical ? s.to_physical() : s;
}

Field group_evolve(const PhaseFunction& phi, double t, const Field& f) {
    return apply_multiplier(group_multiplier(phi, t), f);
}

Field derivative(const Field& f, int order) {
    if (order == 0) return f;
    return apply_multiplier(derivative_multiplier(order), f);
}

Multiplier identity_multiplier() {
    return Multiplier{[](double) { return cplx{1.0, 0.0}; }, "J^0"};
}

Multiplier d_multiplier(double s) {
    return Multiplier{[s](double xi) -> cplx {
                          if (xi == 0.0) return s > 0.0 ? cplx{0.0, 0.0}
                                                        : cplx{std::nan(""), 0.0};
                          if (s == 0.0) return cplx{1.0, 0.0};
                          return cplx{std::pow(std::abs(xi), s), 0.0};
                      },
                      "D^" + std::to_string(s)};
}

Multiplier j_multiplier(double s) {
    return Multiplier{[s](double xi) -> cplx {
                          return cplx{std::pow(1.0 + xi * xi, 0.5 * s), 0.0};
                      },
                      "J^" + std::to_string(s)};
}

Multiplier hilbert_multiplier() {
    return Multiplier{[](double xi) -> cplx {
                          if (xi == 0.0) return cplx{0.0, 0.0};
                          return cplx{0.0, xi > 0.0 ? -1.0 : 1.0};
                      },
                      "H", /*zero_nyquist=*/true};
}

Multiplier derivative_multiplier(int order) {
    return Multiplier{[order](double xi) -> cplx {
                          return std::pow(cplx{0.0, xi}, order);
                      },
                      "d/dx^" + std::to_string(order),
                      /*zero_nyquist=*/order % 2 == 1};
}

Multiplier group_multiplier(const PhaseFunction& phi, double t) {
    if (phi.dim != 1)
        throw BadParams("group_multiplier: phase '" + phi.label + "' is not one-dimensional");
    auto symbol = phi.symbol_nd;
    return Multiplier{[symbol, t](double xi) -> cplx {
                          double p = symbol({xi});
                          if (!std::isfinite(p)) return cplx{std::nan(""), 0.0};
                          return std::polar(1.0, -t * p);
                      },
                      "exp(-it Phi), t=" + std::to_string(t)};
}

} // namespace dlab
