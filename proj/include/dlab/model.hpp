#pragma once

#include "dlab/field.hpp"
#include "dlab/multiplier.hpp"
#include "dlab/phase.hpp"

#include <map>
#include <string>
#include <vector>

namespace dlab {

// Zeroes modes with |k| > n/3 (2/3 rule). Quadratic products are formed in
// physical space and dealiased through this mask.
Field dealias_23(const Field& f);

// A named PDE model: per-component linear phase, coupling constants, and the
// nonlinear part of the right-hand side, du/dt = L u + N(u).
struct ModelSpec {
    enum class Kind { Kawahara, FifthOrder, Ost, HirotaSatsuma };

    Kind kind = Kind::Kawahara;
    std::string label;
    int components = 1;
    std::vector<PhaseFunction> phases; // one per component
    std::map<std::string, double> constants;
    // Replaces the oscillatory Hilbert-term phase by the true decaying
    // semigroup; OST only.
    bool ost_dissipative = false;
    // Internal test hook: scales N without touching parameter validation.
    double nonlinearity_scale = 1.0;
};

ModelSpec make_kawahara(double alpha, double beta, double gamma);
ModelSpec make_fifth_order(double alpha, double beta, double gamma);
ModelSpec make_ost(double eta, bool dissipative = false);
ModelSpec make_hirota_satsuma(double a, double r);

// CLI-facing factory; label in {kawahara, fifth-order, ost, hirota-satsuma}.
ModelSpec make_model(const std::string& label,
                     const std::map<std::string, double>& params = {});

// Signed nonlinear contribution N(state) to du/dt, with 2/3-rule dealiasing
// applied to every product. Throws ArityMismatch if the state arity does not
// match the model.
std::vector<Field> evaluate_nonlinearity(const ModelSpec& m,
                                         const std::vector<Field>& state);

// Linear solution operator of one component over time t.
Multiplier model_propagator(const ModelSpec& m, int component, double t);
Field model_propagate(const ModelSpec& m, int component, double t, const Field& f);

// Generator of the linear flow, du/dt = L u + N(u); the propagator above is
// exp(t L).
Multiplier model_linear_operator(const ModelSpec& m, int component);

// Solution states at increasing times; inner vectors hold one Field per
// model component, all on one grid.
struct Trajectory {
    std::vector<double> times;
    std::vector<std::vector<Field>> states;
    std::string model_label;

    int components() const {
        return states.empty() ? 0 : static_cast<int>(states.front().size());
    }
    size_t size() const { return times.size(); }
    void validate() const;
};

} // namespace dlab
