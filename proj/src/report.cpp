#include "dlab/report.hpp"

#include "dlab/errors.hpp"

#include <cmath>

namespace dlab {

double NormReport::get(const std::string& label) const {
    for (const Entry& e : entries)
        if (e.label == label) return e.value;
    throw BadParams("NormReport: no entry '" + label + "'");
}

const NormReport::Fit& NormReport::get_fit(const std::string& label) const {
    for (const Fit& f : fits)
        if (f.label == label) return f;
    throw BadParams("NormReport: no fit '" + label + "'");
}

bool NormReport::has(const std::string& label) const {
    for (const Entry& e : entries)
        if (e.label == label) return true;
    return false;
}

NormReport::Fit fit_power_law(const std::vector<double>& x, const std::vector<double>& y,
                              const std::string& label) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    long m = 0;
    for (size_t i = 0; i < x.size() && i < y.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) continue;
        double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        syy += ly * ly;
        ++m;
    }
    NormReport::Fit fit;
    fit.label = label;
    if (m < 2) {
        fit.exponent = 0.0;
        fit.constant = m == 1 ? std::exp(sy) : 0.0;
        fit.r2 = 1.0;
        return fit;
    }
    double denom = m * sxx - sx * sx;
    if (denom == 0.0) {
        fit.exponent = 0.0;
        fit.constant = std::exp(sy / m);
        fit.r2 = 1.0;
        return fit;
    }
    fit.exponent = (m * sxy - sx * sy) / denom;
    fit.constant = std::exp((sy - fit.exponent * sx) / m);
    double ss_tot = syy - sy * sy / m;
    double ss_res = 0.0;
    for (size_t i = 0; i < x.size() && i < y.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) continue;
        double pred = fit.exponent * std::log(x[i]) + std::log(fit.constant);
        double res = std::log(y[i]) - pred;
        ss_res += res * res;
    }
    fit.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    return fit;
}

} // namespace dlab
