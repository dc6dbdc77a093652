#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "sbvsim/cli.hpp"
#include "sbvsim/config.hpp"
#include "sbvsim/csvio.hpp"
#include "sbvsim/errors.hpp"
#include "sbvsim/svg.hpp"

using namespace sbvsim;
namespace fs = std::filesystem;

namespace {

int run_cli(const std::vector<std::string>& args) {
    std::vector<const char*> argv;
    argv.push_back("sbvsim");
    for (const auto& a : args)
        argv.push_back(a.c_str());
    return cli::run(static_cast<int>(argv.size()), argv.data());
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& n) const { return (path / n).string(); }
};

} // namespace

TEST_CASE("config: minimal file fills documented defaults") {
    const auto cfg = parse_config_text("[scenario]\nmode = SBV\nn_op = 2\n", "mini");
    CHECK(cfg.scenario.n_us == 24);
    CHECK(cfg.scenario.r_v_db == 10.0);
    CHECK(cfg.scenario.f_max_hz == 35.2e6);
    CHECK(cfg.scenario.width_hz == 5e6);
    CHECK(cfg.scenario.order == AllocationOrder::SNAKE);
    CHECK(cfg.scenario.psd_tx_dbm_hz == -60.0);
    CHECK(cfg.scenario.noise_bg_dbm_hz == -140.0);
    CHECK(cfg.scenario.gamma_db == 9.75);
    CHECK(cfg.scenario.margin_db == 6.0);
    CHECK(cfg.scenario.coding_gain_db == 3.0);
    CHECK(cfg.scenario.b_max == 15.0);
    CHECK(cfg.scenario.f_sym_hz == 4000.0);
    CHECK(cfg.coverage.n_samples == 100000);
    CHECK(cfg.coverage.seed == 42);
    CHECK(cfg.coverage.thresholds_mbps.size() == 61);
    CHECK(cfg.coverage.distances.total.has_value());
    CHECK(cfg.output.dir == ".");
    CHECK(cfg.output.csv);
    CHECK(!cfg.output.svg);
}

TEST_CASE("config: required keys and cross-field invariants") {
    CHECK_THROWS_AS(parse_config_text("[scenario]\nn_op = 2\n", "x"), validation_error);
    CHECK_THROWS_AS(parse_config_text("[scenario]\nmode = SBV\n", "x"), validation_error);
    CHECK_THROWS_AS(
        parse_config_text("[scenario]\nmode = FULL_VECTOR\nn_op = 3\n", "x"),
        validation_error);
    CHECK_NOTHROW(
        parse_config_text("[scenario]\nmode = FULL_VECTOR\nn_op = 1\n", "x"));
}

TEST_CASE("config: unknown keys and sections are hard errors") {
    CHECK_THROWS_WITH_AS(
        parse_config_text("[scenario]\nmode = SBV\nn_op = 2\nwat = 1\n", "cfg"),
        doctest::Contains("wat"), validation_error);
    CHECK_THROWS_AS(
        parse_config_text("[scenario]\nmode = SBV\nn_op = 2\n[extra]\nk = 1\n", "cfg"),
        validation_error);
    CHECK_THROWS_WITH_AS(parse_config_text("top = 1\n", "cfg"),
                         doctest::Contains("top"), validation_error);
}

TEST_CASE("config: parse errors carry line numbers") {
    CHECK_THROWS_WITH_AS(
        parse_config_text("[scenario]\nmode = SBV\nn_op 2\n", "cfg"),
        doctest::Contains("cfg:3"), validation_error);
    CHECK_THROWS_WITH_AS(
        parse_config_text("[scenario]\nmode = SBV\nn_op = two\n", "cfg"),
        doctest::Contains("line 3"), validation_error);
    CHECK_THROWS_WITH_AS(
        parse_config_text("[scenario]\nmode = SBV\nn_op = two\n", "cfg"),
        doctest::Contains("n_op"), validation_error);
}

TEST_CASE("config: figure-style scenario round trip") {
    const auto cfg = parse_config_text(
        "[scenario]\nmode = SBV\nn_op = 3\nr_v_db = 10\nn_us = 24\n"
        "f_max_hz = 35200000\n",
        "fig");
    CHECK(cfg.scenario.r_v_db == 10.0);
    CHECK(cfg.scenario.n_us == 24);
    CHECK(cfg.scenario.f_max_hz == 35.2e6);
    const LinkScenario sc = build_scenario(cfg);
    CHECK(sc.alloc.blocks.size() == 4);
    CHECK(sc.grid.f_max_hz == 35.2e6);
}

TEST_CASE("config: distance specs") {
    const auto cfg = parse_config_text(
        "[scenario]\nmode = NV\nn_op = 2\n[coverage]\n"
        "cab_to_dp = constant:150\ndp_to_home = lognormal:80:0.5\n",
        "dist");
    REQUIRE(cfg.coverage.distances.cab_to_dp.has_value());
    REQUIRE(cfg.coverage.distances.dp_to_home.has_value());
    CHECK(!cfg.coverage.distances.total.has_value());
    CHECK_THROWS_AS(parse_config_text("[scenario]\nmode = NV\nn_op = 2\n"
                                      "[coverage]\ncab_to_dp = constant:150\n",
                                      "dist"),
                    validation_error);
    CHECK_THROWS_AS(parse_config_text("[scenario]\nmode = NV\nn_op = 2\n"
                                      "[coverage]\ntotal = nonsense:1\n",
                                      "dist"),
                    validation_error);
}

TEST_CASE("cli: allocate writes the snake example table") {
    TempDir dir("sbvsim_alloc_test");
    const std::string cfg = dir.file("run.cfg");
    atomic_write_file(cfg, "[scenario]\nmode = SBV\nn_op = 2\n");
    CHECK(run_cli({"allocate", "--config", cfg, "--out", dir.path.string()}) == 0);
    const auto table = parse_csv(read_file(dir.file("allocation.csv")));
    REQUIRE(table.header ==
            std::vector<std::string>{"block_index", "f_lo_hz", "f_hi_hz", "owner"});
    REQUIRE(table.rows.size() == 4);
    CHECK(table.rows[0][3] == "0");
    CHECK(table.rows[1][3] == "1");
    CHECK(table.rows[2][3] == "1");
    CHECK(table.rows[3][3] == "0");
    CHECK(table.rows[3][2] == "3.52e+07");
}

TEST_CASE("cli: coverage reruns are byte-identical; seed flag changes output") {
    TempDir dir("sbvsim_cov_test");
    const std::string cfg = dir.file("run.cfg");
    atomic_write_file(cfg,
                      "[scenario]\nmode = SBV\nn_op = 2\n"
                      "delta_f_hz = 1e6\nf_start_hz = 10e6\nf_max_hz = 26e6\n"
                      "[coverage]\nn_samples = 2000\nseed = 7\n");
    const auto out1 = dir.file("a");
    const auto out2 = dir.file("b");
    CHECK(run_cli({"coverage", "--config", cfg, "--out", out1}) == 0);
    CHECK(run_cli({"coverage", "--config", cfg, "--out", out2}) == 0);
    const auto c1 = read_file(out1 + "/coverage.csv");
    const auto c2 = read_file(out2 + "/coverage.csv");
    CHECK(c1 == c2);

    const auto out3 = dir.file("c");
    CHECK(run_cli({"coverage", "--config", cfg, "--out", out3, "--seed", "8"}) == 0);
    CHECK(read_file(out3 + "/coverage.csv") != c1);
}

TEST_CASE("cli: sweep over f_max reproduces the bandwidth-axis layout") {
    TempDir dir("sbvsim_sweep_test");
    const std::string cfg = dir.file("run.cfg");
    atomic_write_file(cfg,
                      "[scenario]\nmode = SBV\nn_op = 2\nsweep_axis = fmax\n"
                      "f_max_list_hz = 17664000,35200000,70400000,105600000\n"
                      "sweep_modes = NV,SBV\nd_m = 100\n");
    CHECK(run_cli({"sweep", "--config", cfg, "--out", dir.path.string()}) == 0);
    const auto table = parse_csv(read_file(dir.file("sweep.csv")));
    // 4 f_max values x 2 modes x 2 operators
    CHECK(table.rows.size() == 16);
    CHECK(table.header[0] == "x");
}

TEST_CASE("cli: plot renders a polyline per series and rejects empty input") {
    TempDir dir("sbvsim_plot_test");
    const std::string csv = dir.file("curve.csv");
    atomic_write_file(csv,
                      "threshold_mbps,coverage,mode,n_op,n_us,f_max_hz,seed,n_samples\n"
                      "0,1,SBV,2,24,3.52e+07,1,100\n"
                      "100,0.5,SBV,2,24,3.52e+07,1,100\n"
                      "200,0,SBV,2,24,3.52e+07,1,100\n");
    CHECK(run_cli({"plot", csv, "--out", dir.path.string()}) == 0);
    const auto svg = read_file(dir.file("curve.svg"));
    CHECK(svg.find("<polyline") != std::string::npos);
    CHECK(svg.find("<svg") == 0);
    // exactly one series -> exactly one polyline
    CHECK(svg.find("<polyline", svg.find("<polyline") + 1) == std::string::npos);

    const std::string empty = dir.file("empty.csv");
    atomic_write_file(empty,
                      "threshold_mbps,coverage,mode,n_op,n_us,f_max_hz,seed,n_samples\n");
    CHECK(run_cli({"plot", empty, "--out", dir.path.string()}) == 2);
    CHECK(!fs::exists(dir.file("empty.svg")));

    const std::string badcols = dir.file("bad.csv");
    atomic_write_file(badcols, "a,b\n1,2\n");
    CHECK(run_cli({"plot", badcols, "--out", dir.path.string()}) == 2);
}

TEST_CASE("cli: bandwidth-sweep plot keeps NV and SBV series distinguishable") {
    TempDir dir("sbvsim_plot_sweep_test");
    const std::string csv = dir.file("bw.csv");
    atomic_write_file(csv,
                      "x,operator,mode,rate_mbps,legacy_mbps,extension_mbps\n"
                      "3.52e+07,0,NV,33.2,28.9,4.3\n"
                      "1.056e+08,0,NV,36.4,28.9,7.5\n"
                      "3.52e+07,0,SBV,98.4,28.9,69.5\n"
                      "1.056e+08,0,SBV,398,28.9,369\n");
    CHECK(run_cli({"plot", csv, "--out", dir.path.string()}) == 0);
    const auto svg = read_file(dir.file("bw.svg"));
    CHECK(svg.find(">NV op0<") != std::string::npos);
    CHECK(svg.find(">SBV op0<") != std::string::npos);
    // one polyline per series
    std::size_t polylines = 0;
    for (std::size_t pos = svg.find("<polyline"); pos != std::string::npos;
         pos = svg.find("<polyline", pos + 1))
        ++polylines;
    CHECK(polylines == 2);
}

TEST_CASE("cli: exit codes") {
    TempDir dir("sbvsim_exit_test");
    CHECK(run_cli({"--help"}) == 0);
    CHECK(run_cli({"frobnicate"}) == 1);                      // usage
    CHECK(run_cli({"rate"}) == 2);                            // missing config
    const std::string cfg = dir.file("bad.cfg");
    atomic_write_file(cfg, "[scenario]\nmode = SBV\nn_op = 2\nbogus = 1\n");
    CHECK(run_cli({"rate", "--config", cfg, "--out", dir.path.string()}) == 2);
    // FULL_VECTOR with 3 operators: config-level validation error
    const std::string fv = dir.file("fv.cfg");
    atomic_write_file(fv, "[scenario]\nmode = FULL_VECTOR\nn_op = 3\n");
    CHECK(run_cli({"rate", "--config", fv, "--out", dir.path.string()}) == 2);
    // allocate below the legacy edge: domain error
    const std::string low = dir.file("low.cfg");
    atomic_write_file(low, "[scenario]\nmode = NV\nn_op = 2\nf_max_hz = 10e6\n");
    CHECK(run_cli({"allocate", "--config", low, "--out", dir.path.string()}) == 3);
}

TEST_CASE("cli: cluster preset supplies defaults, config overrides") {
    TempDir dir("sbvsim_cluster_test");
    const std::string cfg = dir.file("c.cfg");
    // no mode/n_op: cluster A preset fills n_op = 3
    atomic_write_file(cfg,
                      "[scenario]\ndelta_f_hz = 1e6\nf_start_hz = 10e6\n"
                      "f_max_hz = 26e6\nwidth_hz = 5e6\n"
                      "[coverage]\nn_samples = 800\nseed = 5\n");
    CHECK(run_cli({"coverage", "--config", cfg, "--cluster", "A", "--out",
                   dir.path.string()}) == 0);
    auto table = parse_csv(read_file(dir.file("coverage.csv")));
    REQUIRE(!table.rows.empty());
    const int c_nop = table.column("n_op");
    CHECK(table.rows[0][c_nop] == "3");

    // explicit n_op wins over the preset
    const std::string cfg2 = dir.file("c2.cfg");
    atomic_write_file(cfg2,
                      "[scenario]\nn_op = 2\ndelta_f_hz = 1e6\nf_start_hz = 10e6\n"
                      "f_max_hz = 26e6\nwidth_hz = 5e6\n"
                      "[coverage]\nn_samples = 800\nseed = 5\n");
    CHECK(run_cli({"coverage", "--config", cfg2, "--cluster", "A", "--out",
                   dir.path.string()}) == 0);
    table = parse_csv(read_file(dir.file("coverage.csv")));
    CHECK(table.rows[0][c_nop] == "2");
}

TEST_CASE("cli: cluster preset keeps top-level keys top-level") {
    TempDir dir("sbvsim_cluster_cable_test");
    const std::string cable = dir.file("c.cable");
    atomic_write_file(cable,
                      "[cable]\nk1 = 4\nk2 = 0.4\nkx_db = -22\nf0_hz = 1e6\n"
                      "d0_m = 1000\nf_valid_max_hz = 200e6\n");
    const std::string cfg = dir.file("c.cfg");
    atomic_write_file(cfg, "cable_file = " + cable +
                               "\n[scenario]\ndelta_f_hz = 1e6\n"
                               "f_start_hz = 10e6\nf_max_hz = 26e6\n"
                               "[coverage]\nn_samples = 400\nseed = 2\n");
    CHECK(run_cli({"coverage", "--config", cfg, "--cluster", "B", "--out",
                   dir.path.string()}) == 0);
    const auto table = parse_csv(read_file(dir.file("coverage.csv")));
    CHECK(table.rows[0][table.column("n_op")] == "2");
}

TEST_CASE("cli: svg-only output format skips the csv") {
    TempDir dir("sbvsim_formats_test");
    const std::string cfg = dir.file("run.cfg");
    atomic_write_file(cfg,
                      "[scenario]\nmode = SBV\nn_op = 2\nd_m = 120\n"
                      "[output]\nformats = svg\n");
    CHECK(run_cli({"rate", "--config", cfg, "--out", dir.path.string()}) == 0);
    CHECK(!fs::exists(dir.file("rate.csv")));
    CHECK(fs::exists(dir.file("rate.svg")));
}

TEST_CASE("cli: SBVSIM_SEED overrides config, --seed overrides both") {
    TempDir dir("sbvsim_envseed_test");
    const std::string cfg = dir.file("run.cfg");
    atomic_write_file(cfg,
                      "[scenario]\nmode = SBV\nn_op = 2\ndelta_f_hz = 1e6\n"
                      "f_start_hz = 10e6\nf_max_hz = 26e6\n"
                      "[coverage]\nn_samples = 200\nseed = 7\n");
    setenv("SBVSIM_SEED", "321", 1);
    CHECK(run_cli({"coverage", "--config", cfg, "--out", dir.path.string()}) == 0);
    auto table = parse_csv(read_file(dir.file("coverage.csv")));
    CHECK(table.rows[0][table.column("seed")] == "321");
    CHECK(run_cli({"coverage", "--config", cfg, "--out", dir.path.string(),
                   "--seed", "555"}) == 0);
    table = parse_csv(read_file(dir.file("coverage.csv")));
    CHECK(table.rows[0][table.column("seed")] == "555");
    unsetenv("SBVSIM_SEED");
}

TEST_CASE("cli: non-numeric seed is a usage error") {
    TempDir dir("sbvsim_seed_test");
    const std::string cfg = dir.file("run.cfg");
    atomic_write_file(cfg, "[scenario]\nmode = SBV\nn_op = 2\n");
    CHECK(run_cli({"coverage", "--config", cfg, "--out", dir.path.string(),
                   "--seed", "notanumber", "--samples", "50"}) == 1);
}

TEST_CASE("svg renderer rejects empty charts") {
    ChartSpec spec;
    spec.series.push_back({"empty", {}, {}});
    CHECK_THROWS_AS(render_line_chart(spec), domain_error);
}

TEST_CASE("atomic write leaves no partial file on rename targets") {
    TempDir dir("sbvsim_atomic_test");
    const std::string p = dir.file("out.txt");
    atomic_write_file(p, "hello");
    CHECK(read_file(p) == "hello");
    CHECK(!fs::exists(p + ".tmp"));
}
