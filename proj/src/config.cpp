#include "dlab/config.hpp"

#include "dlab/errors.hpp"
#include "dlab/io.hpp"

#include <fstream>
#include <sstream>

namespace dlab {

std::string ExperimentConfig::serialize() const {
    std::ostringstream out;
    out << "[experiment]\n";
    out << "subcommand=" << subcommand << "\n";
    out << "linear=" << (linear ? 1 : 0) << "\n";
    out << "force=" << (force ? 1 : 0) << "\n";
    out << "seed=" << seed << "\n";
    out << "out_dir=" << out_dir << "\n";
    out << "model=" << model << "\n";
    out << "phase=" << phase << "\n";
    out << "data=" << data << "\n";
    out << "[grid]\n";
    out << "n_points=" << n_points << "\n";
    out << "length=" << format_double(length) << "\n";
    out << "[params]\n";
    for (const auto& [k, v] : params) out << k << "=" << format_double(v) << "\n";
    out << "[numeric]\n";
    for (const auto& [k, v] : numeric) out << k << "=" << format_double(v) << "\n";
    out << "[t_list]\n";
    for (double t : t_list) out << "t=" << format_double(t) << "\n";
    return out.str();
}

ExperimentConfig ExperimentConfig::parse(const std::string& text) {
    ExperimentConfig cfg;
    cfg.params.clear();
    cfg.numeric.clear();
    cfg.t_list.clear();
    std::istringstream in(text);
    std::string line, section;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        if (line.front() == '[' && line.back() == ']') {
            section = line.substr(1, line.size() - 2);
            if (section != "experiment" && section != "grid" && section != "params" &&
                section != "numeric" && section != "t_list")
                throw BadParams("config: unknown section '" + section + "'");
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw BadParams("config: line " + std::to_string(lineno) + " is not key=value");
        std::string key = line.substr(0, eq);
        std::string val = line.substr(eq + 1);
        auto as_double = [&]() {
            try {
                size_t used = 0;
                double d = std::stod(val, &used);
                if (used != val.size()) throw std::invalid_argument("trailing");
                return d;
            } catch (...) {
                throw BadParams("config: bad numeric value for '" + key + "'");
            }
        };
        if (section == "experiment") {
            if (key == "subcommand") cfg.subcommand = val;
            else if (key == "linear") cfg.linear = as_double() != 0.0;
            else if (key == "force") cfg.force = as_double() != 0.0;
            else if (key == "seed") cfg.seed = std::stoull(val);
            else if (key == "out_dir") cfg.out_dir = val;
            else if (key == "model") cfg.model = val;
            else if (key == "phase") cfg.phase = val;
            else if (key == "data") cfg.data = val;
            else throw BadParams("config: unknown key '" + key + "' in [experiment]");
        } else if (section == "grid") {
            if (key == "n_points") cfg.n_points = static_cast<int>(as_double());
            else if (key == "length") cfg.length = as_double();
            else throw BadParams("config: unknown key '" + key + "' in [grid]");
        } else if (section == "params") {
            cfg.params[key] = as_double();
        } else if (section == "numeric") {
            cfg.numeric[key] = as_double();
        } else if (section == "t_list") {
            if (key != "t") throw BadParams("config: unknown key '" + key + "' in [t_list]");
            cfg.t_list.push_back(as_double());
        } else {
            throw BadParams("config: key '" + key + "' outside any section");
        }
    }
    return cfg;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw BadParams("cannot open config '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

std::uint64_t ExperimentConfig::hash() const {
    // The hash identifies the experiment, not the destination: two runs of
    // one configuration into different directories must stamp their CSVs
    // identically.
    ExperimentConfig canon = *this;
    canon.out_dir.clear();
    std::string s = canon.serialize();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::string token;
    std::istringstream in(text);
    while (std::getline(in, token, ',')) {
        if (token.empty()) continue;
        try {
            out.push_back(std::stod(token));
        } catch (...) {
            throw BadParams("bad number '" + token + "' in list");
        }
    }
    return out;
}

} // namespace dlab
