// Command-line entry point: one subcommand per experiment, flags mapped onto
// the flat ExperimentConfig, deterministic CSV/JSON artifacts plus a manifest
// written to --out. Exit codes: 0 success, 2 invalid configuration, 3 numeric
// failure (the failing invariant is named on stderr).

#include "dlab/config.hpp"
#include "dlab/errors.hpp"
#include "dlab/experiments.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <string>
#include <vector>

namespace {

std::map<std::string, double> parse_kv_pairs(const std::vector<std::string>& items) {
    std::map<std::string, double> out;
    for (const std::string& item : items) {
        std::string chunk;
        std::istringstream in(item);
        while (std::getline(in, chunk, ',')) {
            if (chunk.empty()) continue;
            auto eq = chunk.find('=');
            if (eq == std::string::npos)
                throw dlab::BadParams("--params expects key=value, got '" + chunk + "'");
            out[chunk.substr(0, eq)] = std::stod(chunk.substr(eq + 1));
        }
    }
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"dlab: pseudo-spectral laboratory for weighted-space dispersive estimates"};
    app.require_subcommand(1);

    std::string config_path, out_dir = "out", model = "kawahara", phase = "kdv", data = "kink";
    std::vector<std::string> params;
    std::string t_list_str, probes_str;
    int n_points = 4096;
    double length = 80.0;
    std::uint64_t seed = 0x5eed;
    bool force = false;
    std::map<std::string, double> numeric;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "config file (flags override it)");
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--n", n_points, "grid points");
        sub->add_option("--L", length, "box length");
        sub->add_option("--params", params, "model/phase constants, key=value[,key=value...]");
        sub->add_option("--seed", seed, "sampling seed");
        sub->add_flag("--force", force, "allow hypothesis-violating runs");
    };
    auto add_num = [&numeric](CLI::App* sub, const std::string& flag, const std::string& key,
                              const std::string& help) {
        auto cb = [&numeric, key](double v) { numeric[key] = v; };
        sub->add_option_function<double>(flag, cb, help);
    };

    CLI::App* evolve = app.add_subcommand("evolve", "integrate one of the four models");
    add_common(evolve);
    evolve->add_option("--model", model, "kawahara|fifth-order|ost|hirota-satsuma");
    evolve->add_option("--data", data, "kink|gaussian|exp|sech|powerlaw|file:PATH");
    add_num(evolve, "--dt", "dt", "time step");
    add_num(evolve, "--t-end", "t_end", "final time");
    add_num(evolve, "--store-every", "store_every", "sample stride");
    add_num(evolve, "--amplitude", "amplitude", "data amplitude factor");
    std::string scheme = "ifrk4";
    evolve->add_option("--scheme", scheme, "ifrk4|picard");
    add_num(evolve, "--s", "s", "Sobolev index (picard scheme)");
    add_num(evolve, "--b", "b", "weight exponent (picard scheme)");

    CLI::App* persistence = app.add_subcommand("persistence", "weight-exchange bound for a linear flow");
    add_common(persistence);
    persistence->add_option("--phase", phase, "monomial|radial|zk|kdv|kawahara|ost");
    persistence->add_option("--data", data, "kink|gaussian|exp|sech|powerlaw|file:PATH");
    persistence->add_option("--t-list", t_list_str, "comma-separated times")->required();
    add_num(persistence, "--s", "s", "Sobolev index");
    add_num(persistence, "--b", "b", "weight exponent");

    CLI::App* stein = app.add_subcommand("stein-bound", "pointwise fractional-derivative bound for e^{it Phi}");
    add_common(stein);
    stein->add_option("--phase", phase, "monomial|radial|zk|kdv|kawahara|ost");
    stein->add_option("--t-list", t_list_str, "comma-separated times (0 added if absent)");
    add_num(stein, "--b", "b", "fractional order in (0,1)");
    add_num(stein, "--x-decades", "x_decades", "decades of |x| to sweep");
    add_num(stein, "--x-min", "x_min", "smallest |x|");
    add_num(stein, "--x-per-decade", "x_per_decade", "sample density");

    CLI::App* blowup = app.add_subcommand("blowup", "singular-time dichotomy of the assembled data");
    add_common(blowup);
    blowup->add_option("--model", model, "kawahara|fifth-order|hirota-satsuma");
    blowup->add_option("--probes", probes_str, "comma-separated probe times")->required();
    add_num(blowup, "--sigma", "sigma", "resonance spacing");
    add_num(blowup, "--J", "J", "series truncation");
    add_num(blowup, "--dt", "dt", "time step (nonlinear runs)");
    add_num(blowup, "--amp-hs", "amp_hs", "Sobolev amplitude for nonlinear runs");
    bool linear_flag = false, nonlinear_flag = false;
    blowup->add_flag("--linear", linear_flag, "evolve through the linear group (default)");
    blowup->add_flag("--nonlinear", nonlinear_flag, "evolve through the full solver");

    CLI::App* smoothing = app.add_subcommand("smoothing", "Duhamel-term spectral-tail gain");
    add_common(smoothing);
    smoothing->add_option("--model", model, "kawahara|fifth-order|ost|hirota-satsuma");
    add_num(smoothing, "--s", "s", "data Sobolev ceiling");
    add_num(smoothing, "--t-end", "t_end", "final time");
    add_num(smoothing, "--dt", "dt", "time step override");
    add_num(smoothing, "--amp-hs", "amp_hs", "Sobolev amplitude of the data");

    CLI::App* picard = app.add_subcommand("picard", "Duhamel fixed-point iteration");
    add_common(picard);
    picard->add_option("--model", model, "kawahara|fifth-order|ost|hirota-satsuma");
    picard->add_option("--data", data, "kink|gaussian|exp|sech|powerlaw|file:PATH");
    add_num(picard, "--s", "s", "Sobolev index");
    add_num(picard, "--b", "b", "weight exponent");
    add_num(picard, "--T", "T", "time horizon");
    add_num(picard, "--dt", "dt", "sample spacing");
    add_num(picard, "--tol", "tol", "contraction tolerance");
    add_num(picard, "--max-iter", "max_iter", "iteration cap");
    add_num(picard, "--hs-scale", "hs_scale", "rescale data to this H^s size");

    CLI::App* convergence = app.add_subcommand("convergence", "self-check table");
    add_common(convergence);
    add_num(convergence, "--dt", "dt", "manufactured-solution step");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        dlab::ExperimentConfig cfg;
        if (!config_path.empty()) cfg = dlab::ExperimentConfig::load(config_path);

        CLI::App* sub = app.get_subcommands().front();
        cfg.subcommand = sub->get_name();
        cfg.out_dir = out_dir;
        cfg.n_points = n_points;
        cfg.length = length;
        cfg.model = model;
        cfg.phase = phase;
        cfg.data = data;
        cfg.seed = seed;
        cfg.force = force;
        for (const auto& [k, v] : parse_kv_pairs(params)) cfg.params[k] = v;
        for (const auto& [k, v] : numeric) cfg.numeric[k] = v;
        if (!t_list_str.empty()) cfg.t_list = dlab::parse_double_list(t_list_str);
        if (!probes_str.empty()) cfg.t_list = dlab::parse_double_list(probes_str);
        if (cfg.subcommand == "blowup") {
            if (nonlinear_flag && linear_flag)
                throw dlab::BadParams("choose one of --linear / --nonlinear");
            cfg.linear = !nonlinear_flag;
            if (cfg.t_list.empty()) throw dlab::BadParams("probes required");
        }
        if (cfg.subcommand == "evolve" && scheme != "ifrk4") {
            if (scheme != "picard") throw dlab::BadParams("unknown scheme '" + scheme + "'");
            cfg.numeric["scheme_picard"] = 1.0;
        }

        dlab::ExperimentResult res = dlab::run_experiment(cfg);
        if (res.exit_code == 0) {
            std::cout << res.message << "\n";
            for (const std::string& f : res.files) std::cout << "wrote " << f << "\n";
        } else {
            std::cerr << "error: " << res.message << "\n";
        }
        return res.exit_code;
    } catch (const dlab::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const dlab::NumericError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
