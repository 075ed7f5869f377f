#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace dlab {

// Flat experiment description with a canonical line-oriented text form.
// serialize() -> parse() is lossless; parse() rejects unknown keys.
struct ExperimentConfig {
    std::string subcommand = "convergence";
    int n_points = 4096;
    double length = 80.0;
    std::string model = "kawahara";
    std::string phase = "kdv";
    std::string data = "kink";
    std::map<std::string, double> params;  // model / phase parameters
    std::map<std::string, double> numeric; // s, b, sigma, J, dt, t_end, ...
    std::vector<double> t_list;            // probe / sample times
    bool linear = true;
    bool force = false;
    std::uint64_t seed = 0x5eed;
    std::string out_dir = ".";

    std::string serialize() const;
    static ExperimentConfig parse(const std::string& text);
    static ExperimentConfig load(const std::string& path);

    // FNV-1a of the canonical serialization; stamped into every CSV.
    std::uint64_t hash() const;

    double num(const std::string& key, double fallback) const {
        auto it = numeric.find(key);
        return it == numeric.end() ? fallback : it->second;
    }

    bool operator==(const ExperimentConfig& other) const = default;
};

std::vector<double> parse_double_list(const std::string& text);

} // namespace dlab
