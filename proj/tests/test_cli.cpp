#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pmm/config.hpp"
#include "pmm/csv.hpp"
#include "pmm/errors.hpp"
#include "pmm/run.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>

using namespace pmm;

namespace {

std::string write_temp(const std::string& name, const std::string& text) {
    auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream out(path);
    out << text;
    return path.string();
}

} // namespace

TEST_CASE("seventeen significant digits round-trip doubles exactly") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        double x = uni(rng) * std::pow(10.0, static_cast<int>(rng() % 13) - 6);
        CHECK(std::stod(fmt17(x)) == x);
    }
    CHECK(fmt17(0.1) == "0.10000000000000001");
}

TEST_CASE("config serialization round-trips through a file") {
    RunConfig cfg;
    cfg.command = "hydro";
    cfg.model.m = 3;
    cfg.model.n = 123;
    cfg.model.kappa = 2.25;
    cfg.model.theta = 0.5;
    cfg.model.a = 1.25;
    cfg.model.alpha = 0.15;
    cfg.model.beta = 0.85;
    cfg.model.T = 0.75;
    cfg.cells = 160;
    cfg.cfl = 0.3;
    cfg.stored_steps = 20;
    cfg.bc = "dirichlet";
    cfg.trajectories = 33;
    cfg.master_seed = 0xDEADBEEFull;
    cfg.sample_times = {0.01, 0.05, 0.25};
    cfg.comparison_cells = 20;
    cfg.topology = "torus";
    cfg.kappa_grid = {0.5, 5.0};
    cfg.n_grid = {40, 80};
    cfg.c = 9.5;
    cfg.dict_max_freq = 5;
    cfg.dict_time_powers = 3;
    cfg.g = "cosine:0.5,0.25,2";
    cfg.out_dir = "/tmp/pmm_roundtrip_out";

    std::string path = write_temp("pmm_roundtrip.conf", serialize_config(cfg));
    ParseOutcome out = parse_command_line({"--config", path});
    REQUIRE(out.config.has_value());
    CHECK(*out.config == cfg);
}

TEST_CASE("flags override config file values") {
    std::string path = write_temp("pmm_override.conf", "kappa=1\nm=2\n");
    ParseOutcome out = parse_command_line({"solve", "--config", path, "--kappa", "5"});
    REQUIRE(out.config.has_value());
    CHECK(out.config->model.kappa == 5.0);
    CHECK(out.config->model.m == 2);
}

TEST_CASE("unknown keys are hard errors") {
    std::string path = write_temp("pmm_unknown.conf", "m=2\nnot_a_key=3\n");
    ParseOutcome out = parse_command_line({"solve", "--config", path});
    CHECK(!out.config.has_value());
    CHECK(out.exit_code == 1);

    ParseOutcome flag = parse_command_line({"solve", "--not_a_flag", "3"});
    CHECK(!flag.config.has_value());
    CHECK(flag.exit_code == 1);
}

TEST_CASE("defaults are the documented ones") {
    ParseOutcome out = parse_command_line({"solve"});
    REQUIRE(out.config.has_value());
    CHECK(out.config->model.a == 1.5);
    CHECK(out.config->cfl == 0.4);
    CHECK(out.config->model.theta == 1.0);
    CHECK(out.config->c == 0.0); // resolved to m + m^2 + 1 downstream
}

TEST_CASE("environment seed loses to an explicit flag") {
    setenv("PMM_SEED", "777", 1);
    ParseOutcome env_only = parse_command_line({"solve"});
    REQUIRE(env_only.config.has_value());
    CHECK(env_only.config->master_seed == 777);

    ParseOutcome with_flag = parse_command_line({"solve", "--master_seed", "9"});
    REQUIRE(with_flag.config.has_value());
    CHECK(with_flag.config->master_seed == 9);
    unsetenv("PMM_SEED");
}

TEST_CASE("field-level validation names the offender") {
    CHECK_THROWS_WITH_AS(parse_command_line({"solve", "--alpha", "1.2"}),
                         doctest::Contains("alpha"), ValidationError);
    CHECK_THROWS_WITH_AS(parse_command_line({"dance"}), doctest::Contains("command"),
                         ValidationError);
    CHECK_THROWS_WITH_AS(parse_command_line({"solve", "--bc", "mixed"}),
                         doctest::Contains("bc"), ValidationError);
    CHECK_THROWS_WITH_AS(parse_command_line({"solve", "--g", "wedge:1"}),
                         doctest::Contains("profile"), ValidationError);
}

TEST_CASE("exit codes separate validation from numerical failures") {
    auto out_dir = (std::filesystem::temp_directory_path() / "pmm_cli_exit").string();
    CHECK(run_main({"solve", "--cells", "16", "--T", "0.01", "--out_dir", out_dir}) == 0);
    CHECK(run_main({"solve", "--alpha", "1.2", "--out_dir", out_dir}) == 1);
    CHECK(run_main({"solve", "--cfl", "2.0", "--out_dir", out_dir}) == 2);
    CHECK(run_main({"--help"}) == 0);
}

TEST_CASE("artifacts land in the output directory") {
    auto dir = std::filesystem::temp_directory_path() / "pmm_cli_artifacts";
    std::filesystem::remove_all(dir);
    RunConfig cfg;
    cfg.command = "solve";
    cfg.cells = 16;
    cfg.model.T = 0.01;
    cfg.stored_steps = 4;
    cfg.out_dir = dir.string();
    CHECK(run(cfg) == 0);
    CHECK(std::filesystem::exists(dir / "manifest.json"));
    CHECK(std::filesystem::exists(dir / "field.csv"));
    CHECK(std::filesystem::exists(dir / "traces.csv"));

    // Manifest echoes defaulted fields and carries the version string.
    std::ifstream in(dir / "manifest.json");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(text.find("\"config.a\": 1.5") != std::string::npos);
    CHECK(text.find("pmm_lab") != std::string::npos);
    CHECK(text.find("wall_seconds") != std::string::npos);
}

TEST_CASE("reruns of one config are byte-identical") {
    auto d1 = std::filesystem::temp_directory_path() / "pmm_rerun_1";
    auto d2 = std::filesystem::temp_directory_path() / "pmm_rerun_2";
    for (auto& d : {d1, d2}) {
        std::filesystem::remove_all(d);
        RunConfig cfg;
        cfg.command = "simulate";
        cfg.model.n = 30;
        cfg.trajectories = 5;
        cfg.sample_times = {0.01};
        cfg.out_dir = d.string();
        REQUIRE(run(cfg) == 0);
    }
    std::ifstream f1(d1 / "site_density.csv"), f2(d2 / "site_density.csv");
    std::string s1((std::istreambuf_iterator<char>(f1)), std::istreambuf_iterator<char>());
    std::string s2((std::istreambuf_iterator<char>(f2)), std::istreambuf_iterator<char>());
    CHECK(s1 == s2);
    CHECK(!s1.empty());
}
