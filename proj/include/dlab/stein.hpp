#pragma once

#include "dlab/field.hpp"
#include "dlab/parallel.hpp"
#include "dlab/phase.hpp"
#include "dlab/report.hpp"

#include <functional>
#include <vector>

namespace dlab {

// Quadrature controls for the pointwise fractional difference operator
//   Db f(x) = ( integral |f(y)-f(x)|^2 / |x-y|^{1+2b} dy )^{1/2}.
// Panels are dyadic toward the singularity (Gauss-Legendre per panel).
// For decaying inputs the truncated far field |h| > outer_cut is completed
// analytically with the constant-level tail |f(x)-f_inf|^2 R^{-2b}/b; for
// oscillatory phase inputs the panels track the local oscillation and the
// far field is completed at the equidistributed level.
struct SteinQuadratureConfig {
    double b = 0.5;          // order, in (0,1)
    double inner_cut = 1e-8; // epsilon
    // Truncation radius. Field-backed sweeps need 4.5 R <= L so that the
    // refinement band 2R never wraps periodic reads into the data core; the
    // analytic tail completion covers everything beyond R.
    double outer_cut = 16.0;
    double max_panel_width = 2.0;
    bool tail_completion = true;
    double fail_threshold = 1e-3; // QuadratureNotConverged above this delta

    // Oscillatory-input controls.
    double osc_waves_per_panel = 0.25;
    double min_oscillations = 200.0;
    double osc_cut_ratio = 1e-3;

    void validate() const;
};

struct SteinValue {
    double value = 0.0;
    double self_check = 0.0; // relative change under eps/2, 2R refinement
};

// Pointwise operator on a callable (evaluated off-grid directly) or on a
// Field (trigonometric interpolation supplies off-grid values).
SteinValue stein_pointwise(const std::function<cplx(double)>& f, double x,
                           const SteinQuadratureConfig& cfg);
SteinValue stein_pointwise(const Field& f, double x, const SteinQuadratureConfig& cfg);

// Same operator at every grid point at once, sharing one offset set across
// the grid via spectral translations. The parallel policy and the serial
// reference produce identical output (per-offset rows, merged in order).
struct SteinFieldResult {
    std::vector<double> values;
    double self_check = 0.0;
};
SteinFieldResult stein_field_quadrature(const Field& f, const SteinQuadratureConfig& cfg,
                                        parallel::Policy policy = parallel::Policy::Parallel);

// Spectral fractional derivative, multiplier |xi|^b.
Field stein_field_spectral(const Field& f, double b);

// Ratio |quadrature route| / |spectral route| of the L2 norms. At p = 2 the
// ratio is a constant kappa(b) independent of f.
NormReport check_norm_equivalence(const Field& f, double b, SteinQuadratureConfig cfg);

// Pointwise operator applied to e^{i t Phi(.)} at x, with oscillation-aware
// panels and equidistributed tail completion.
SteinValue stein_phase_pointwise(const PhaseFunction& phi, double t, double x,
                                 const SteinQuadratureConfig& cfg);

// Sweeps Db(e^{it Phi})(x) over a (t, x) grid, fits the large-|x| and
// large-t growth, and records the empirical constant of the pointwise bound
// C {1 + (1+|t|) g(x)^b}.
struct LemmaBoundResult {
    std::vector<double> t_list;
    std::vector<double> x_list;
    std::vector<std::vector<double>> values; // values[it][ix]
    double slope_x = 0.0;                    // worst fitted |x|-exponent
    double slope_t = 0.0;                    // worst fitted t-exponent
    double c_fit = 0.0;
    double max_self_check = 0.0;
    NormReport report() const;
};
LemmaBoundResult verify_lemma_bound(const PhaseFunction& phi, double b,
                                    const std::vector<double>& t_list,
                                    const std::vector<double>& x_list,
                                    SteinQuadratureConfig cfg);

// Pointwise and L2 Leibniz inequalities for the product fg; reports the
// worst signed violation (positive means the inequality failed).
NormReport check_leibniz(const Field& f, const Field& g, double b,
                         SteinQuadratureConfig cfg);

} // namespace dlab
