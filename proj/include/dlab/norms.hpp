#pragma once

#include "dlab/field.hpp"
#include "dlab/model.hpp"
#include "dlab/multiplier.hpp"
#include "dlab/report.hpp"

#include <limits>
#include <vector>

namespace dlab {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// ( (2 pi)^-1 integral (1+|xi|^2)^s |fhat|^2 dxi )^{1/2}; equals l2_norm at s=0.
double sobolev_norm(const Field& f, double s);

// ( integral |x|^{2b} |f|^2 dx )^{1/2}, signed box coordinate.
double weighted_norm(const Field& f, double b);
// Same with the Japanese bracket <x> = (1+x^2)^{1/2}.
double bracket_weighted_norm(const Field& f, double b);

// Pointwise multiplication by |x|^b or <x>^b.
Field multiply_abs_weight(const Field& f, double b);
Field multiply_bracket_weight(const Field& f, double b);

enum class NormOrder { TimeOuter, SpaceOuter };

// Mixed space-time Lebesgue norm of (derivative w)(t, x) over the trajectory:
// TimeOuter is L^q_T L^r_x, SpaceOuter is L^r_x L^q_T. Time integration is
// trapezoidal over the samples; q or r = kInf takes maxima.
double mixed_norm(const Trajectory& traj, int component, const Multiplier& deriv,
                  double q, double r, NormOrder order);

// Per-model collection of solution-size functionals: the model's mixed-norm
// summands (Lambda), the weighted sup-norm (lambda_w), and their sum (Omega),
// reported separately per component plus the total.
NormReport lambda_functional(const Trajectory& traj, double s, double b);
// Convenience: the omega_total entry.
double omega_total(const Trajectory& traj, double s, double b);

// Checks the weight-exchange bound for the linear flow of phi:
//   || |x|^b U(t) u0 || <= C { (1+|t|) ||u0||_{s,2} + || |x|^b u0 || }.
// Requires 0 < b <= s/K for the phase's growth order K unless
// allow_hypothesis_violation is set.
NormReport check_weight_exchange(const PhaseFunction& phi, const Field& u0, double s,
                                 double b, const std::vector<double>& t_list,
                                 bool allow_hypothesis_violation = false);

// Remainder of exchanging |x|^alpha with the Airy-type group U_a:
//   rem(t) = |x|^alpha U_a(t) u0 - U_a(t)(|x|^alpha u0),
// checked against C (1+|t|) ( ||u0|| + ||D^{2 alpha} u0|| ).
NormReport flp_remainder(double a_const, const Field& u0, double alpha,
                         const std::vector<double>& t_list);

// Ratio of || J^{theta a} ( <x>^{(1-theta) b} f ) || to
// || <x>^b f ||^{1-theta} || J^a f ||^theta.
NormReport check_interpolation(const Field& f, double a, double b, double theta);

} // namespace dlab
