#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace dlab {

// Dispersion symbol Phi(xi) on R^n together with the data controlling it:
// a local Lipschitz majorant g (|Phi(x)-Phi(y)| <= g(x)|x-y| when
// |x-y| <= |x|), a global Hoelder exponent a (|Phi(x)-Phi(y)| <= C|x-y|^a
// when |x-y| >= |x|), and the polynomial growth order K of g.
struct PhaseFunction {
    std::function<double(const std::vector<double>&)> symbol_nd;
    std::function<double(const std::vector<double>&)> majorant_nd;
    int dim = 1;
    double holder_exponent = 1.0; // a >= 1
    int growth_order = 1;         // K with g(x) <= C (1 + |x|^K)
    std::string label;

    double operator()(double xi) const;
    double majorant(double x) const;
};

// Named phases. Parameter constraints are checked at construction.
PhaseFunction monomial_phase(int k);
PhaseFunction radial_phase(int k, int n);
PhaseFunction zk_phase(int n);
PhaseFunction kdv_phase(double a);
PhaseFunction kawahara_phase(double beta, double gamma);
PhaseFunction ost_phase(double eta);

// String-keyed factory used by the CLI: name in
// {monomial, radial, zk, kdv, kawahara, ost}, parameters as key=value.
PhaseFunction builtin_phase(const std::string& name,
                            const std::map<std::string, double>& params = {});

struct ConditionReport {
    std::string label;
    int dim = 1;
    long n_samples = 0;
    double sample_radius = 0.0;
    std::uint64_t seed = 0;
    // sup |Phi(x)-Phi(y)| / (g(x)|x-y|) over pairs with |x-y| <= |x|.
    double lipschitz_ratio_max = 0.0;
    // sup |Phi(x)-Phi(y)| / |x-y|^a over pairs with |x-y| >= |x|; this is the
    // empirical Hoelder constant.
    double holder_ratio_max = 0.0;
    // sup |Phi(y)| / (1 + |y|^a) over sampled y.
    double growth_ratio_max = 0.0;
    bool pass = false;
};

// Monte-Carlo check of the two phase conditions over a ball of the given
// radius. Deterministic for a fixed seed; sampling runs in parallel.
ConditionReport verify_conditions(const PhaseFunction& phi, double sample_radius,
                                  long n_samples, std::uint64_t seed = 0x5eed);

} // namespace dlab
