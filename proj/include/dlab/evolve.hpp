#pragma once

#include "dlab/model.hpp"
#include "dlab/norms.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace dlab {

enum class Scheme { IFRK4, Picard };

struct SolverConfig {
    double dt = 1e-3;
    double t_end = 1.0;
    Scheme scheme = Scheme::IFRK4;
    int picard_max_iter = 12;
    double picard_tol = 1e-7;
    bool dealias = true; // products are always dealiased in the model RHS
    int store_every = 1;
    // Aliasing guard: error out when the spectral tail of a state exceeds
    // this fraction of its spectral peak.
    double tail_error_threshold = 1e-6;
    // Advisory threshold on the initial data; exceeding it only warns.
    double tail_warn_threshold = 1e-10;
};

// Manufactured-solution hook: extra forcing F(t) added to the right-hand
// side, returned in spectral representation on the state grid.
using Forcing = std::function<std::vector<Field>(double)>;

// Fourth-order Runge-Kutta on the integrating-factor variable
// w(t) = U(-t) u(t); the linear flow is applied exactly through spectral
// multipliers, only N(u) (+ forcing) is stepped.
Trajectory evolve(const ModelSpec& model, const std::vector<Field>& u0,
                  const SolverConfig& cfg, const Forcing& forcing = nullptr);

struct PicardTrace {
    std::vector<Trajectory> iterates;
    std::vector<double> omega_norms;          // Omega of each iterate
    std::vector<double> omega_distances;      // Omega(u^{k+1} - u^k)
    std::vector<double> contraction_factors;  // distance ratios
    bool converged = false;
};

// Duhamel fixed-point iteration u^{k+1} = U(t)u0 + int_0^t U(t-t') N(u^k) dt'
// on a uniform sample grid over [0, T]; the integral uses the trapezoidal
// rule over the samples. Stops when the Omega-distance of successive
// iterates drops below cfg.picard_tol. Throws NotContracting after three
// consecutive expanding steps.
PicardTrace picard_iterate(const ModelSpec& model, const std::vector<Field>& u0, double s,
                           double b, double T, const SolverConfig& cfg);

// Z(t) = u(t) - U(t) u0 at every sample, per component (exact subtraction).
Trajectory duhamel_term(const ModelSpec& model, const Trajectory& traj);

} // namespace dlab
