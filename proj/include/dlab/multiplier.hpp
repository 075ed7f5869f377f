#pragma once

#include "dlab/field.hpp"

#include <functional>
#include <string>

namespace dlab {

struct PhaseFunction; // see phase.hpp

// Diagonal Fourier-space operator f -> (symbol(xi) * fhat)^vee.
struct Multiplier {
    std::function<cplx(double)> symbol;
    std::string label;
    // Odd real-odd symbols (i xi, Hilbert) zero the unpaired Nyquist mode so
    // real fields stay real.
    bool zero_nyquist = false;
};

// Applies m to f. Output representation matches the input representation.
// Throws NonFiniteSymbol if the symbol is NaN/inf at any grid frequency.
Field apply_multiplier(const Multiplier& m, const Field& f);

// (exp(-i t Phi(xi)) fhat)^vee -- the unitary group of the phase.
Field group_evolve(const PhaseFunction& phi, double t, const Field& f);

// Exact spectral differentiation of the trigonometric interpolant.
Field derivative(const Field& f, int order);

// Stock multipliers.
Multiplier identity_multiplier();
Multiplier d_multiplier(double s);       // |xi|^s  (s<0 is singular at xi=0)
Multiplier j_multiplier(double s);       // (1+xi^2)^{s/2}
Multiplier hilbert_multiplier();         // -i sgn(xi)
Multiplier derivative_multiplier(int order); // (i xi)^order
Multiplier group_multiplier(const PhaseFunction& phi, double t);

} // namespace dlab
