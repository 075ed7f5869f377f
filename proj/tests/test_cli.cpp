#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dlab/config.hpp"
#include "dlab/errors.hpp"
#include "dlab/experiments.hpp"
#include "dlab/io.hpp"
#include "dlab/testfuncs.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace dlab;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string temp_dir(const std::string& tag) {
    auto p = std::filesystem::temp_directory_path() / ("dlab_test_" + tag);
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p.string();
}

} // namespace

TEST_CASE("config round-trips losslessly and rejects unknown keys") {
    ExperimentConfig cfg;
    cfg.subcommand = "blowup";
    cfg.n_points = 8192;
    cfg.length = 80.0;
    cfg.model = "kawahara";
    cfg.params = {{"beta", 1.0}, {"gamma", -0.1}};
    cfg.numeric = {{"sigma", 0.5}, {"J", 6.0}, {"dt", 1.25e-3}};
    cfg.t_list = {0.25, 0.5, 0.75, 1.0};
    cfg.linear = true;
    cfg.seed = 12345;
    cfg.out_dir = "/tmp/somewhere";

    ExperimentConfig back = ExperimentConfig::parse(cfg.serialize());
    CHECK(back == cfg);
    CHECK(back.hash() == cfg.hash());

    CHECK_THROWS_AS(ExperimentConfig::parse("[experiment]\nsubcommand=evolve\nwhatever=1\n"),
                    BadParams);
    CHECK_THROWS_AS(ExperimentConfig::parse("[nope]\nx=1\n"), BadParams);
    CHECK_THROWS_AS(ExperimentConfig::parse("[grid]\nn_points=abc\n"), BadParams);

    CHECK(parse_double_list("1,2.5,4").size() == 3);
    CHECK_THROWS_AS(parse_double_list("1,x"), BadParams);
}

TEST_CASE("field and trajectory containers round-trip") {
    GridPtr g = Grid1D::make(256, 40.0);
    Field f = Field::sample(g, profiles::by_name("gaussian"));
    std::string dir = temp_dir("io");
    write_field(f, dir + "/f.dlf");
    Field back = read_field(dir + "/f.dlf");
    CHECK(back.n() == f.n());
    CHECK(back.grid().length() == f.grid().length());
    CHECK(back.repr() == Repr::Physical);
    for (size_t i = 0; i < f.values().size(); ++i) CHECK(back.values()[i] == f.values()[i]);

    Trajectory traj;
    traj.model_label = "kawahara";
    traj.times = {0.0, 0.5};
    traj.states = {{f}, {f * 2.0}};
    write_trajectory(traj, dir + "/t.dlt");
    Trajectory tback = read_trajectory(dir + "/t.dlt");
    CHECK(tback.times == traj.times);
    CHECK(tback.states[1][0].values() == traj.states[1][0].values());

    CHECK_THROWS_AS(read_field(dir + "/t.dlt"), BadParams);
    CHECK_THROWS_AS(read_field(dir + "/missing.dlf"), BadParams);

    write_field_csv(f, dir + "/f.csv", "test");
    std::string csv = slurp(dir + "/f.csv");
    CHECK(csv.rfind("# test\nx,re,im\n", 0) == 0);
}

TEST_CASE("blowup experiment emits the verdict CSV and is byte-deterministic") {
    ExperimentConfig cfg;
    cfg.subcommand = "blowup";
    cfg.n_points = 4096;
    cfg.length = 80.0;
    cfg.model = "kawahara";
    cfg.numeric = {{"sigma", 0.5}, {"J", 6.0}};
    cfg.t_list = {0.25, 0.5, 0.75, 1.0};
    cfg.linear = true;
    cfg.out_dir = temp_dir("blowup_a");

    ExperimentResult r1 = run_experiment(cfg);
    REQUIRE(r1.exit_code == 0);
    std::string csv1 = slurp(cfg.out_dir + "/blowup.csv");
    CHECK(csv1.find("t,jump,baseline,verdict") != std::string::npos);
    CHECK(csv1.find("Singular") != std::string::npos);
    CHECK(csv1.find("Smooth") != std::string::npos);

    cfg.out_dir = temp_dir("blowup_b");
    ExperimentResult r2 = run_experiment(cfg);
    REQUIRE(r2.exit_code == 0);
    CHECK(slurp(cfg.out_dir + "/blowup.csv") == csv1);
}

TEST_CASE("blowup experiment validates probes") {
    ExperimentConfig cfg;
    cfg.subcommand = "blowup";
    cfg.model = "kawahara";
    cfg.t_list = {};
    ExperimentResult res = run_experiment(cfg);
    CHECK(res.exit_code == 2);
    CHECK(res.message.find("probes required") != std::string::npos);
}

TEST_CASE("persistence experiment emits finite ratios") {
    ExperimentConfig cfg;
    cfg.subcommand = "persistence";
    cfg.n_points = 2048;
    cfg.phase = "kdv";
    cfg.data = "kink";
    cfg.numeric = {{"s", 1.5}, {"b", 0.75}};
    cfg.t_list = {1.0, 2.0, 4.0};
    cfg.out_dir = temp_dir("persistence");
    ExperimentResult res = run_experiment(cfg);
    REQUIRE(res.exit_code == 0);
    std::string csv = slurp(cfg.out_dir + "/persistence.csv");
    CHECK(csv.find("t,weighted_norm,bound,ratio") != std::string::npos);
    int rows = 0;
    for (char c : csv)
        if (c == '\n') ++rows;
    CHECK(rows == 2 + 3); // comment + header + 3 rows
    CHECK(csv.find("nan") == std::string::npos);
    CHECK(csv.find("inf") == std::string::npos);

    // hypothesis violation surfaces as a validation failure unless forced
    cfg.numeric["b"] = 0.9;
    cfg.out_dir = temp_dir("persistence2");
    CHECK(run_experiment(cfg).exit_code == 2);
    cfg.force = true;
    CHECK(run_experiment(cfg).exit_code == 0);
}

TEST_CASE("stein-bound experiment writes the summary json") {
    ExperimentConfig cfg;
    cfg.subcommand = "stein-bound";
    cfg.phase = "monomial";
    cfg.params = {{"k", 3.0}};
    cfg.numeric = {{"b", 0.5}, {"x_decades", 2.0}, {"x_per_decade", 4.0}};
    cfg.t_list = {0.0, 1.0, 4.0};
    cfg.out_dir = temp_dir("steinbound");
    ExperimentResult res = run_experiment(cfg);
    REQUIRE(res.exit_code == 0);
    std::string json = slurp(cfg.out_dir + "/stein_bound.json");
    CHECK(json.find("slope_x") != std::string::npos);
    CHECK(json.find("C_fit") != std::string::npos);
    std::string csv = slurp(cfg.out_dir + "/stein_bound.csv");
    CHECK(csv.find("t,x,value,bound,ratio") != std::string::npos);
}

TEST_CASE("evolve experiment writes a trajectory container") {
    ExperimentConfig cfg;
    cfg.subcommand = "evolve";
    cfg.n_points = 512;
    cfg.model = "kawahara";
    cfg.data = "gaussian";
    cfg.numeric = {{"dt", 1e-3}, {"t_end", 0.1}, {"store_every", 25.0}, {"amplitude", 0.5}};
    cfg.out_dir = temp_dir("evolve");
    ExperimentResult res = run_experiment(cfg);
    REQUIRE(res.exit_code == 0);
    Trajectory traj = read_trajectory(cfg.out_dir + "/trajectory.dlt");
    CHECK(traj.size() >= 2);
    CHECK(traj.times.back() == doctest::Approx(0.1));
}

TEST_CASE("picard experiment reports contraction") {
    ExperimentConfig cfg;
    cfg.subcommand = "picard";
    cfg.n_points = 1024;
    cfg.model = "kawahara";
    cfg.data = "gaussian";
    cfg.numeric = {{"s", 2.0}, {"b", 0.5}, {"T", 0.05}, {"dt", 1e-3}, {"hs_scale", 0.1}};
    cfg.out_dir = temp_dir("picard");
    ExperimentResult res = run_experiment(cfg);
    REQUIRE(res.exit_code == 0);
    CHECK(res.message.find("converged") != std::string::npos);
    std::string csv = slurp(cfg.out_dir + "/picard.csv");
    CHECK(csv.find("iteration,omega,distance,factor") != std::string::npos);
}

TEST_CASE("convergence sweep passes by default and fails on an absurd step") {
    ExperimentConfig cfg;
    cfg.subcommand = "convergence";
    cfg.n_points = 1024;
    cfg.out_dir = temp_dir("conv");
    ExperimentResult res = run_experiment(cfg);
    CHECK(res.exit_code == 0);
    std::string csv = slurp(cfg.out_dir + "/convergence.csv");
    CHECK(csv.find("FAIL") == std::string::npos);
    CHECK(csv.find("dft_roundtrip_n8") != std::string::npos); // minimal grid included

    cfg.numeric["dt"] = 2.0; // 100x too large
    cfg.out_dir = temp_dir("conv2");
    ExperimentResult bad = run_experiment(cfg);
    CHECK(bad.exit_code == 3);
    CHECK(slurp(cfg.out_dir + "/convergence.csv").find("FAIL") != std::string::npos);
}

TEST_CASE("manifest records the configuration") {
    ExperimentConfig cfg;
    cfg.subcommand = "persistence";
    cfg.n_points = 1024;
    cfg.phase = "kdv";
    cfg.numeric = {{"s", 1.5}, {"b", 0.5}};
    cfg.t_list = {1.0};
    cfg.out_dir = temp_dir("manifest");
    REQUIRE(run_experiment(cfg).exit_code == 0);
    std::string man = slurp(cfg.out_dir + "/manifest.txt");
    CHECK(man.find("subcommand=persistence") != std::string::npos);
    CHECK(man.find("[grid]") != std::string::npos);
    ExperimentConfig echo = ExperimentConfig::parse(man.substr(man.find("[experiment]")));
    CHECK(echo.numeric.at("s") == 1.5);
}
