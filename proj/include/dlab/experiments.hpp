#pragma once

#include "dlab/config.hpp"
#include "dlab/field.hpp"

#include <string>
#include <vector>

namespace dlab {

inline constexpr const char* kToolVersion = "dlab 0.1.0";

struct ExperimentResult {
    int exit_code = 0; // 0 ok, 2 validation failure, 3 numeric failure
    std::vector<std::string> files;
    std::string message;
};

// Executes the experiment selected by cfg.subcommand, writing CSV/JSON
// artifacts plus a manifest into cfg.out_dir. Identical configs produce
// byte-identical CSV output. Errors are mapped to exit codes, with the
// failing invariant named in message.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

// Initial-data registry shared by experiments: named profile, "powerlaw"
// (spectral tail with ceiling numeric["s"]), or "file:PATH".
Field make_data_field(const ExperimentConfig& cfg, GridPtr grid);

} // namespace dlab
