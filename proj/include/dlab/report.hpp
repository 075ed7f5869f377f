#pragma once

#include <string>
#include <vector>

namespace dlab {

// Labeled collection of computed norms plus fitted exponents/constants.
struct NormReport {
    struct Entry {
        std::string label;
        double value = 0.0;
        bool degenerate = false;
    };
    struct Fit {
        std::string label;
        double exponent = 0.0;
        double constant = 0.0;
        double r2 = 0.0;
    };

    std::vector<Entry> entries;
    std::vector<Fit> fits;

    void add(const std::string& label, double value, bool degenerate = false) {
        entries.push_back({label, value, degenerate});
    }
    void add_fit(const std::string& label, double exponent, double constant, double r2) {
        fits.push_back({label, exponent, constant, r2});
    }
    double get(const std::string& label) const;
    const Fit& get_fit(const std::string& label) const;
    bool has(const std::string& label) const;
};

// Least-squares fit of log(y) = exponent * log(x) + log(constant).
// Points with nonpositive x or y are skipped.
NormReport::Fit fit_power_law(const std::vector<double>& x, const std::vector<double>& y,
                              const std::string& label = "fit");

} // namespace dlab
