#pragma once

#include "dlab/field.hpp"

#include <functional>
#include <string>

namespace dlab {

// Analytic profiles shared by experiments and tests.
namespace profiles {

// (e^{-2|.|} * e^{-2|.|})(x) = 0.5 e^{-2|x|} (1 + 2|x|); smooth off the
// origin with a third-derivative jump of 16 there.
double kink(double x);
// e^{-2|x|}; first-derivative jump of -4 at the origin.
double exp_kink(double x);
double gaussian(double x, double width = 2.0);
double sech(double x);

// Named lookup for the CLI --data flag ("kink", "gaussian", "exp", "sech").
std::function<double(double)> by_name(const std::string& name);

} // namespace profiles

// Field whose spectrum is A (1 + xi^2)^{-(s + 1/2)/2}: real, even, localized,
// with Sobolev ceiling exactly H^s.
Field powerlaw_tail_data(GridPtr grid, double s, double amplitude = 1.0);

} // namespace dlab
