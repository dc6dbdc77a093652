#include "sbvsim/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sbvsim/config.hpp"
#include "sbvsim/coverage.hpp"
#include "sbvsim/csvio.hpp"
#include "sbvsim/errors.hpp"
#include "sbvsim/kvfile.hpp"
#include "sbvsim/svg.hpp"

namespace sbvsim::cli {

namespace {

namespace fs = std::filesystem;

struct CommonOpts {
    std::string config_path;
    std::string cluster;   // "", "A" or "B"
    std::string out_dir;   // overrides [output] dir when set
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> samples;
};

ScenarioConfig load_config(const CommonOpts& opts) {
    if (opts.config_path.empty())
        throw validation_error("--config FILE is required for this command");
    std::string text = read_file(opts.config_path);
    ScenarioConfig cfg;
    if (!opts.cluster.empty()) {
        // presets supply mode/n_op defaults; explicit config keys win.
        // appended at the end so top-level keys in the file stay top-level
        const ClusterPreset preset = cluster_preset(opts.cluster[0]);
        const KvFile kv = parse_kv_text(text, opts.config_path);
        std::ostringstream patched;
        patched << text;
        if (!kv.has("scenario", "mode") || !kv.has("scenario", "n_op")) {
            patched << "\n[scenario]\n";
            if (!kv.has("scenario", "mode"))
                patched << "mode = SBV\n";
            if (!kv.has("scenario", "n_op"))
                patched << "n_op = " << preset.n_op << "\n";
        }
        text = patched.str();
    }
    cfg = parse_config_text(text, opts.config_path);
    if (!opts.out_dir.empty())
        cfg.output.dir = opts.out_dir;
    // seed precedence: --seed, then SBVSIM_SEED, then config
    if (const char* env = std::getenv("SBVSIM_SEED")) {
        try {
            cfg.coverage.seed = static_cast<std::uint64_t>(std::stoull(env));
        } catch (const std::exception&) {
            throw validation_error("SBVSIM_SEED is not an integer: " + std::string(env));
        }
    }
    if (opts.seed)
        cfg.coverage.seed = *opts.seed;
    if (opts.samples)
        cfg.coverage.n_samples = *opts.samples;
    return cfg;
}

std::string sweep_csv(const std::vector<SweepPoint>& points) {
    std::ostringstream out;
    out << "x,operator,mode,rate_mbps,legacy_mbps,extension_mbps\n";
    for (const auto& p : points) {
        out << format_sig6(p.x) << ',' << p.op << ',' << to_string(p.mode) << ','
            << format_sig6(p.rate.aggregate_mbps) << ','
            << format_sig6(p.rate.legacy_mbps) << ','
            << format_sig6(p.rate.extension_mbps) << '\n';
    }
    return out.str();
}

std::string coverage_csv(const std::vector<CoverageCurve>& curves) {
    std::ostringstream out;
    out << "threshold_mbps,coverage,mode,n_op,n_us,f_max_hz,seed,n_samples\n";
    for (const auto& c : curves) {
        for (std::size_t i = 0; i < c.thresholds_mbps.size(); ++i) {
            out << format_sig6(c.thresholds_mbps[i]) << ','
                << format_sig6(c.coverage[i]) << ',' << to_string(c.mode) << ','
                << c.n_op << ',' << c.n_us << ',' << format_sig6(c.f_max_hz)
                << ',' << c.seed << ',' << c.n_samples << '\n';
        }
    }
    return out.str();
}

std::string allocation_csv(const SubBandAllocation& alloc) {
    std::ostringstream out;
    out << "block_index,f_lo_hz,f_hi_hz,owner\n";
    for (std::size_t k = 0; k < alloc.blocks.size(); ++k) {
        const auto& b = alloc.blocks[k];
        out << k << ',' << format_sig6(b.f_lo_hz) << ',' << format_sig6(b.f_hi_hz)
            << ',' << b.owner << '\n';
    }
    return out.str();
}

ChartSpec chart_from_rate_csv(const CsvTable& table) {
    const int cx = table.column("x");
    const int cop = table.column("operator");
    const int cmode = table.column("mode");
    const int crate = table.column("rate_mbps");
    if (cx < 0 || cop < 0 || cmode < 0 || crate < 0)
        throw validation_error("rate CSV: missing column(s) among x,operator,mode,rate_mbps");
    ChartSpec spec;
    spec.title = "rate vs x";
    spec.x_label = "x";
    spec.y_label = "rate (Mbit/s)";
    std::map<std::string, std::size_t> index;
    for (const auto& row : table.rows) {
        const std::string label = row[cmode] + " op" + row[cop];
        auto it = index.find(label);
        if (it == index.end()) {
            index.emplace(label, spec.series.size());
            spec.series.push_back({label, {}, {}});
            it = index.find(label);
        }
        auto& s = spec.series[it->second];
        s.x.push_back(std::stod(row[cx]));
        s.y.push_back(std::stod(row[crate]));
    }
    return spec;
}

ChartSpec chart_from_coverage_csv(const CsvTable& table) {
    const int ct = table.column("threshold_mbps");
    const int cc = table.column("coverage");
    const int cmode = table.column("mode");
    const int cnop = table.column("n_op");
    const int cnus = table.column("n_us");
    const int cfmax = table.column("f_max_hz");
    if (ct < 0 || cc < 0 || cmode < 0 || cnop < 0 || cnus < 0 || cfmax < 0)
        throw validation_error(
            "coverage CSV: missing column(s) among threshold_mbps,coverage,mode,n_op,n_us,f_max_hz");
    ChartSpec spec;
    spec.title = "coverage (C-CDF)";
    spec.x_label = "rate threshold (Mbit/s)";
    spec.y_label = "coverage";
    std::map<std::string, std::size_t> index;
    for (const auto& row : table.rows) {
        std::ostringstream label;
        label << row[cmode] << " n_op=" << row[cnop] << " n_us=" << row[cnus]
              << " f_max=" << format_sig6(std::stod(row[cfmax]) / 1e6) << "MHz";
        auto it = index.find(label.str());
        if (it == index.end()) {
            index.emplace(label.str(), spec.series.size());
            spec.series.push_back({label.str(), {}, {}});
            it = index.find(label.str());
        }
        auto& s = spec.series[it->second];
        s.x.push_back(std::stod(row[ct]));
        s.y.push_back(std::stod(row[cc]));
    }
    return spec;
}

void maybe_write_svg(const ScenarioConfig& cfg, const std::string& csv_text,
                     const std::string& stem, bool is_coverage) {
    if (!cfg.output.svg)
        return;
    const CsvTable table = parse_csv(csv_text);
    const ChartSpec spec = is_coverage ? chart_from_coverage_csv(table)
                                       : chart_from_rate_csv(table);
    atomic_write_file((fs::path(cfg.output.dir) / (stem + ".svg")).string(),
                      render_line_chart(spec));
}

int cmd_rate(const CommonOpts& opts) {
    const ScenarioConfig cfg = load_config(opts);
    const LinkScenario sc = build_scenario(cfg);
    std::vector<SweepPoint> points;
    for (int op = 0; op < sc.n_op; ++op) {
        SweepPoint p;
        p.x = cfg.scenario.d_m;
        p.op = op;
        p.mode = sc.mode;
        p.rate = operator_rate(sc, op, cfg.scenario.d_m);
        points.push_back(p);
    }
    const std::string csv = sweep_csv(points);
    if (cfg.output.csv)
        atomic_write_file((fs::path(cfg.output.dir) / "rate.csv").string(), csv);
    maybe_write_svg(cfg, csv, "rate", false);
    for (const auto& p : points) {
        std::cout << to_string(p.mode) << " op" << p.op << " @ "
                  << format_sig6(p.x) << " m: "
                  << format_sig6(p.rate.aggregate_mbps) << " Mbit/s (legacy "
                  << format_sig6(p.rate.legacy_mbps) << ", extension "
                  << format_sig6(p.rate.extension_mbps) << ")\n";
    }
    return 0;
}

int cmd_sweep(const CommonOpts& opts) {
    const ScenarioConfig cfg = load_config(opts);
    std::vector<SweepPoint> points;
    if (cfg.scenario.sweep_axis == SweepAxis::FMAX) {
        // base template at the largest f_max keeps width/order settings
        const LinkScenario base =
            build_scenario(cfg, cfg.scenario.f_max_list_hz.back(), cfg.scenario.mode);
        points = sweep_fmax(base, cfg.scenario.d_m, cfg.scenario.f_max_list_hz,
                            cfg.scenario.sweep_modes);
    } else {
        for (const Mode mode : cfg.scenario.sweep_modes) {
            const LinkScenario sc = build_scenario(cfg, cfg.scenario.f_max_hz, mode);
            for (int op = 0; op < sc.n_op; ++op) {
                auto part = sweep_distance(sc, op, cfg.scenario.distance_list_m);
                points.insert(points.end(), part.begin(), part.end());
            }
        }
    }
    const std::string csv = sweep_csv(points);
    if (cfg.output.csv)
        atomic_write_file((fs::path(cfg.output.dir) / "sweep.csv").string(), csv);
    maybe_write_svg(cfg, csv, "sweep", false);
    std::cout << "sweep.csv: " << points.size() << " rows\n";
    return 0;
}

int cmd_coverage(const CommonOpts& opts) {
    const ScenarioConfig cfg = load_config(opts);
    std::vector<CoverageCurve> curves;
    if (!opts.cluster.empty()) {
        const ClusterPreset preset = cluster_preset(opts.cluster[0]);
        ClusterRunOptions run;
        run.n_us_list = {cfg.scenario.n_us};
        run.f_max_list = {cfg.scenario.f_max_hz};
        run.thresholds_mbps = cfg.coverage.thresholds_mbps;
        run.n_samples = cfg.coverage.n_samples;
        run.seed = cfg.coverage.seed;
        run.op = cfg.scenario.op;
        run.n_op_override = cfg.scenario.n_op;
        run.distance_override = cfg.coverage.distances;
        run.r_v_db = cfg.scenario.r_v_db;
        const CableModelParams cable = cfg.cable_file.empty()
                                           ? default_cable()
                                           : load_cable_file(cfg.cable_file);
        curves = run_cluster_scenario(preset, run, cable);
    } else {
        const LinkScenario sc = build_scenario(cfg);
        curves.push_back(coverage_ccdf(sc, cfg.scenario.op, cfg.coverage.distances,
                                       cfg.coverage.thresholds_mbps,
                                       cfg.coverage.n_samples, cfg.coverage.seed));
    }
    const std::string csv = coverage_csv(curves);
    if (cfg.output.csv)
        atomic_write_file((fs::path(cfg.output.dir) / "coverage.csv").string(), csv);
    maybe_write_svg(cfg, csv, "coverage", true);
    std::cout << "coverage.csv: " << curves.size() << " curve(s), seed "
              << cfg.coverage.seed << ", " << cfg.coverage.n_samples
              << " samples each\n";
    return 0;
}

int cmd_allocate(const CommonOpts& opts) {
    const ScenarioConfig cfg = load_config(opts);
    const SubBandAllocation alloc =
        allocate_subbands(cfg.scenario.n_op, cfg.scenario.f_max_hz,
                          cfg.scenario.width_hz, cfg.scenario.order);
    atomic_write_file((fs::path(cfg.output.dir) / "allocation.csv").string(),
                      allocation_csv(alloc));
    std::cout << "allocation.csv: " << alloc.blocks.size() << " blocks for "
              << cfg.scenario.n_op << " operator(s)\n";
    return 0;
}

int cmd_plot(const std::string& csv_path, std::string kind,
             const std::string& out_dir) {
    const CsvTable table = parse_csv(read_file(csv_path));
    if (table.rows.empty())
        throw validation_error(csv_path + ": no data rows");
    if (kind.empty())
        kind = table.column("threshold_mbps") >= 0 ? "ccdf" : "rate-vs-x";
    ChartSpec spec;
    if (kind == "ccdf")
        spec = chart_from_coverage_csv(table);
    else if (kind == "rate-vs-x")
        spec = chart_from_rate_csv(table);
    else
        throw validation_error("unknown plot kind '" + kind +
                               "' (rate-vs-x or ccdf)");
    fs::path out = fs::path(csv_path).filename().replace_extension(".svg");
    out = fs::path(out_dir.empty() ? fs::path(csv_path).parent_path() : fs::path(out_dir)) / out;
    atomic_write_file(out.string(), render_line_chart(spec));
    std::cout << out.string() << "\n";
    return 0;
}

} // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"sbvsim — multi-operator DSL rate and coverage simulator"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string plot_csv, plot_kind, plot_out;

    const auto add_common = [&](CLI::App* cmd, bool with_cluster = true) {
        cmd->add_option("--config", opts.config_path, "scenario config file");
        if (with_cluster)
            cmd->add_option("--cluster", opts.cluster, "cluster preset (A or B)")
                ->check(CLI::IsMember({"A", "B"}));
        cmd->add_option("--out", opts.out_dir, "output directory");
        cmd->add_option("--seed", [&](const CLI::results_t& r) {
            try {
                opts.seed = std::stoull(r[0]);
            } catch (const std::exception&) {
                return false;  // conversion failure -> usage error
            }
            return true;
        }, "override the coverage seed");
        cmd->add_option("--samples", [&](const CLI::results_t& r) {
            try {
                opts.samples = std::stoull(r[0]);
            } catch (const std::exception&) {
                return false;
            }
            return true;
        }, "override the coverage sample count");
    };

    add_common(app.add_subcommand("rate", "per-operator rate at one distance"));
    add_common(app.add_subcommand("sweep", "rate vs distance or vs f_max"));
    add_common(app.add_subcommand("coverage", "Monte Carlo coverage (C-CDF)"));
    add_common(app.add_subcommand("allocate", "sub-band allocation table"));
    auto* plot = app.add_subcommand("plot", "render a result CSV as SVG");
    plot->add_option("csv", plot_csv, "input CSV (sweep/rate or coverage schema)")
        ->required();
    plot->add_option("--kind", plot_kind, "rate-vs-x or ccdf (default: inferred)");
    plot->add_option("--out", plot_out, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);  // 0
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (app.got_subcommand("rate")) return cmd_rate(opts);
        if (app.got_subcommand("sweep")) return cmd_sweep(opts);
        if (app.got_subcommand("coverage")) return cmd_coverage(opts);
        if (app.got_subcommand("allocate")) return cmd_allocate(opts);
        if (app.got_subcommand("plot")) return cmd_plot(plot_csv, plot_kind, plot_out);
    } catch (const validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 1;
}

} // namespace sbvsim::cli
