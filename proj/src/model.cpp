#include "dlab/model.hpp"

#include "dlab/errors.hpp"

#include <cmath>

namespace dlab {

Field dealias_23(const Field& f) {
    Field s = f.to_spectral();
    const Grid1D& g = f.grid();
    const int n = g.n();
    for (int m = 0; m < n; ++m) {
        int k = (m < n / 2) ? m : m - n;
        if (3 * std::abs(k) > n) s.values()[static_cast<size_t>(m)] = cplx{0.0, 0.0};
    }
    return f.repr() == Repr::Physical ? s.to_physical() : s;
}

namespace {

// Pointwise product in physical space, 2/3-dealiased; returned spectral so
// solver stages avoid round-trip transforms.
Field product_dealiased(const Field& a, const Field& b) {
    Field pa = a.to_physical();
    Field pb = b.to_physical();
    std::vector<cplx> prod(pa.values().size());
    for (size_t i = 0; i < prod.size(); ++i) prod[i] = pa.values()[i] * pb.values()[i];
    Field p(a.grid_ptr(), std::move(prod), Repr::Physical);
    return dealias_23(p.to_spectral());
}

double require(const ModelSpec& m, const std::string& key) {
    auto it = m.constants.find(key);
    if (it == m.constants.end())
        throw BadParams("model '" + m.label + "' is missing constant " + key);
    return it->second;
}

} // namespace

ModelSpec make_kawahara(double alpha, double beta, double gamma) {
    if (alpha * gamma == 0.0)
        throw BadParams("kawahara: alpha*gamma must be nonzero");
    ModelSpec m;
    m.kind = ModelSpec::Kind::Kawahara;
    m.label = "kawahara";
    m.components = 1;
    m.phases = {kawahara_phase(beta, gamma)};
    m.constants = {{"alpha", alpha}, {"beta", beta}, {"gamma", gamma}};
    return m;
}

ModelSpec make_fifth_order(double alpha, double beta, double gamma) {
    if (alpha * gamma == 0.0)
        throw BadParams("fifth-order: alpha*gamma must be nonzero");
    if (!(beta * gamma < 0.0))
        throw BadParams("fifth-order: beta*gamma must be negative");
    ModelSpec m;
    m.kind = ModelSpec::Kind::FifthOrder;
    m.label = "fifth-order";
    m.components = 1;
    m.phases = {kawahara_phase(beta, gamma)};
    m.constants = {{"alpha", alpha}, {"beta", beta}, {"gamma", gamma}};
    return m;
}

ModelSpec make_ost(double eta, bool dissipative) {
    if (!(eta > 0.0)) throw BadParams("ost: eta must be positive");
    ModelSpec m;
    m.kind = ModelSpec::Kind::Ost;
    m.label = "ost";
    m.components = 1;
    m.phases = {ost_phase(eta)};
    m.constants = {{"eta", eta}};
    m.ost_dissipative = dissipative;
    return m;
}

ModelSpec make_hirota_satsuma(double a, double r) {
    if (a == 0.0) throw BadParams("hirota-satsuma: a must be nonzero");
    ModelSpec m;
    m.kind = ModelSpec::Kind::HirotaSatsuma;
    m.label = "hirota-satsuma";
    m.components = 2;
    m.phases = {kdv_phase(a), kdv_phase(-1.0)};
    m.constants = {{"a", a}, {"r", r}};
    return m;
}

ModelSpec make_model(const std::string& label, const std::map<std::string, double>& params) {
    auto get = [&params](const std::string& key, double fallback) {
        auto it = params.find(key);
        return it == params.end() ? fallback : it->second;
    };
    if (label == "kawahara")
        return make_kawahara(get("alpha", 1.0), get("beta", 1.0), get("gamma", -1.0));
    if (label == "fifth-order" || label == "fifth_order")
        return make_fifth_order(get("alpha", 1.0), get("beta", 1.0), get("gamma", -1.0));
    if (label == "ost") return make_ost(get("eta", 1.0), get("dissipative", 0.0) != 0.0);
    if (label == "hirota-satsuma" || label == "hirota_satsuma")
        return make_hirota_satsuma(get("a", 0.5), get("r", 1.0));
    throw BadParams("unknown model '" + label + "'");
}

std::vector<Field> evaluate_nonlinearity(const ModelSpec& m, const std::vector<Field>& state) {
    if (static_cast<int>(state.size()) != m.components)
        throw ArityMismatch("model '" + m.label + "' expects " + std::to_string(m.components) +
                            " component(s), got " + std::to_string(state.size()));
    const double s = m.nonlinearity_scale;
    std::vector<Field> out;
    switch (m.kind) {
        case ModelSpec::Kind::Kawahara: {
            double alpha = require(m, "alpha");
            out.push_back(product_dealiased(state[0], derivative(state[0], 1)) * (-alpha * s));
            break;
        }
        case ModelSpec::Kind::FifthOrder: {
            double alpha = require(m, "alpha");
            out.push_back(product_dealiased(state[0], derivative(state[0], 2)) * (-alpha * s));
            break;
        }
        case ModelSpec::Kind::Ost: {
            out.push_back(product_dealiased(state[0], derivative(state[0], 1)) * (-1.0 * s));
            break;
        }
        case ModelSpec::Kind::HirotaSatsuma: {
            double a = require(m, "a");
            double r = require(m, "r");
            const Field& u = state[0];
            const Field& v = state[1];
            Field du = derivative(u, 1);
            Field dv = derivative(v, 1);
            Field nu = product_dealiased(u, du) * (6.0 * a * s) +
                       product_dealiased(v, dv) * (2.0 * r * s);
            Field nv = product_dealiased(u, dv) * (-3.0 * s);
            out.push_back(std::move(nu));
            out.push_back(std::move(nv));
            break;
        }
    }
    return out;
}

Multiplier model_propagator(const ModelSpec& m, int component, double t) {
    if (component < 0 || component >= m.components)
        throw BadParams("model_propagator: bad component index");
    if (m.kind == ModelSpec::Kind::Ost && m.ost_dissipative) {
        double eta = require(m, "eta");
        return Multiplier{[eta, t](double xi) -> cplx {
                              double axi = std::abs(xi);
                              double damp = eta * (axi - axi * axi * axi);
                              return std::exp(t * damp) * std::polar(1.0, t * xi * xi * xi);
                          },
                          "ost dissipative semigroup, t=" + std::to_string(t)};
    }
    return group_multiplier(m.phases[static_cast<size_t>(component)], t);
}

Field model_propagate(const ModelSpec& m, int component, double t, const Field& f) {
    return apply_multiplier(model_propagator(m, component, t), f);
}

Multiplier model_linear_operator(const ModelSpec& m, int component) {
    if (component < 0 || component >= m.components)
        throw BadParams("model_linear_operator: bad component index");
    if (m.kind == ModelSpec::Kind::Ost && m.ost_dissipative) {
        double eta = require(m, "eta");
        return Multiplier{[eta](double xi) -> cplx {
                              double axi = std::abs(xi);
                              return cplx{eta * (axi - axi * axi * axi), xi * xi * xi};
                          },
                          "L (ost dissipative)"};
    }
    auto sym = m.phases[static_cast<size_t>(component)].symbol_nd;
    return Multiplier{[sym](double xi) -> cplx { return cplx{0.0, -sym({xi})}; }, "L"};
}

void Trajectory::validate() const {
    if (times.size() != states.size())
        throw BadParams("Trajectory: times/states size mismatch");
    for (size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1]))
            throw BadParams("Trajectory: times must be strictly increasing");
    if (!states.empty()) {
        const Grid1D& g = states.front().front().grid();
        for (const auto& s : states)
            for (const Field& f : s)
                if (!f.grid().same_as(g))
                    throw BadParams("Trajectory: states must share one grid");
    }
}

} // namespace dlab
