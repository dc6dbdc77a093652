#include "sbvsim/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "sbvsim/errors.hpp"
#include "sbvsim/kvfile.hpp"

namespace sbvsim {

namespace {

// "a,b,c" or "start:stop:step"
std::vector<double> parse_double_list(const KvFile::Entry& e) {
    std::vector<double> out;
    const std::string& v = e.value;
    const auto bad = [&](const std::string& why) -> validation_error {
        std::ostringstream msg;
        msg << "line " << e.line << ": key '" << e.key << "': " << why;
        return validation_error(msg.str());
    };
    if (v.find(':') != std::string::npos) {
        double start = 0, stop = 0, step = 0;
        char c1 = 0, c2 = 0;
        std::istringstream in(v);
        if (!(in >> start >> c1 >> stop >> c2 >> step) || c1 != ':' || c2 != ':')
            throw bad("expected start:stop:step");
        if (!(step > 0.0) || stop < start)
            throw bad("need step > 0 and stop >= start");
        for (double x = start; x <= stop + 1e-9 * step; x += step)
            out.push_back(x);
        return out;
    }
    std::istringstream in(v);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            std::size_t pos = 0;
            out.push_back(std::stod(item, &pos));
            if (pos != item.size())
                throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw bad("'" + item + "' is not a number");
        }
    }
    if (out.empty())
        throw bad("empty list");
    return out;
}

// distance spec values: "lognormal:<median_m>:<sigma>", "constant:<d_m>",
// "empirical:<path>"
DistanceDistribution parse_distance_spec(const KvFile::Entry& e, DistanceRole role) {
    const auto bad = [&](const std::string& why) -> validation_error {
        std::ostringstream msg;
        msg << "line " << e.line << ": key '" << e.key << "': " << why;
        return validation_error(msg.str());
    };
    std::vector<std::string> parts;
    std::istringstream in(e.value);
    std::string item;
    while (std::getline(in, item, ':'))
        parts.push_back(item);
    if (parts.empty())
        throw bad("empty distance spec");
    const std::string& kind = parts[0];
    try {
        if (kind == "lognormal") {
            if (parts.size() != 3)
                throw bad("expected lognormal:<median_m>:<sigma>");
            auto d = DistanceDistribution::lognormal_median(std::stod(parts[1]),
                                                            std::stod(parts[2]), role);
            return d;
        }
        if (kind == "constant") {
            if (parts.size() != 2)
                throw bad("expected constant:<d_m>");
            return DistanceDistribution::constant(std::stod(parts[1]), role);
        }
        if (kind == "empirical") {
            if (parts.size() != 2)
                throw bad("expected empirical:<csv path>");
            auto d = load_empirical_cdf(parts[1]);
            d.role = role;
            return d;
        }
    } catch (const validation_error&) {
        throw;
    } catch (const std::exception&) {
        throw bad("malformed numeric field");
    }
    throw bad("unknown distance kind '" + kind + "' (lognormal, constant or empirical)");
}

const std::set<std::string> kScenarioKeys = {
    "mode", "n_op", "n_us", "r_v_db", "f_max_hz", "width_hz", "order", "op",
    "d_m", "sweep_axis", "distance_list_m", "f_max_list_hz", "sweep_modes",
    "psd_tx_dbm_hz", "noise_bg_dbm_hz", "gamma_db", "margin_db",
    "coding_gain_db", "b_max", "f_sym_hz", "delta_f_hz", "f_start_hz"};

const std::set<std::string> kCoverageKeys = {
    "total", "cab_to_dp", "dp_to_home", "n_samples", "seed", "thresholds_mbps"};

const std::set<std::string> kOutputKeys = {"dir", "formats"};

} // namespace

ScenarioConfig parse_config_text(const std::string& text, const std::string& origin) {
    const KvFile kv = parse_kv_text(text, origin);
    ScenarioConfig cfg;

    for (const auto& section : kv.sections) {
        if (section != "scenario" && section != "coverage" && section != "output")
            throw validation_error(origin + ": unknown section [" + section + "]");
    }

    bool have_mode = false, have_n_op = false;
    bool have_total = false, have_cab = false, have_dp = false;
    for (const auto& e : kv.entries) {
        if (e.section.empty()) {
            if (e.key == "cable_file") {
                cfg.cable_file = e.value;
                continue;
            }
            throw validation_error(origin + ":" + std::to_string(e.line) +
                                   ": unknown top-level key '" + e.key + "'");
        }
        if (e.section == "scenario") {
            if (!kScenarioKeys.count(e.key))
                throw validation_error(origin + ":" + std::to_string(e.line) +
                                       ": unknown [scenario] key '" + e.key + "'");
            auto& s = cfg.scenario;
            if (e.key == "mode") { s.mode = mode_from_string(e.value); have_mode = true; }
            else if (e.key == "n_op") { s.n_op = static_cast<int>(kv_int(e)); have_n_op = true; }
            else if (e.key == "n_us") s.n_us = static_cast<int>(kv_int(e));
            else if (e.key == "r_v_db") s.r_v_db = kv_double(e);
            else if (e.key == "f_max_hz") s.f_max_hz = kv_double(e);
            else if (e.key == "width_hz") s.width_hz = kv_double(e);
            else if (e.key == "order") {
                if (e.value == "LINEAR") s.order = AllocationOrder::LINEAR;
                else if (e.value == "SNAKE") s.order = AllocationOrder::SNAKE;
                else throw validation_error(origin + ":" + std::to_string(e.line) +
                                            ": order must be LINEAR or SNAKE");
            }
            else if (e.key == "op") s.op = static_cast<int>(kv_int(e));
            else if (e.key == "d_m") s.d_m = kv_double(e);
            else if (e.key == "sweep_axis") {
                if (e.value == "distance") s.sweep_axis = SweepAxis::DISTANCE;
                else if (e.value == "fmax") s.sweep_axis = SweepAxis::FMAX;
                else throw validation_error(origin + ":" + std::to_string(e.line) +
                                            ": sweep_axis must be distance or fmax");
            }
            else if (e.key == "distance_list_m") s.distance_list_m = parse_double_list(e);
            else if (e.key == "f_max_list_hz") s.f_max_list_hz = parse_double_list(e);
            else if (e.key == "sweep_modes") {
                std::istringstream in(e.value);
                std::string item;
                while (std::getline(in, item, ','))
                    s.sweep_modes.push_back(mode_from_string(item));
            }
            else if (e.key == "psd_tx_dbm_hz") s.psd_tx_dbm_hz = kv_double(e);
            else if (e.key == "noise_bg_dbm_hz") s.noise_bg_dbm_hz = kv_double(e);
            else if (e.key == "gamma_db") s.gamma_db = kv_double(e);
            else if (e.key == "margin_db") s.margin_db = kv_double(e);
            else if (e.key == "coding_gain_db") s.coding_gain_db = kv_double(e);
            else if (e.key == "b_max") s.b_max = kv_double(e);
            else if (e.key == "f_sym_hz") s.f_sym_hz = kv_double(e);
            else if (e.key == "delta_f_hz") s.delta_f_hz = kv_double(e);
            else if (e.key == "f_start_hz") s.f_start_hz = kv_double(e);
            continue;
        }
        if (e.section == "coverage") {
            if (!kCoverageKeys.count(e.key))
                throw validation_error(origin + ":" + std::to_string(e.line) +
                                       ": unknown [coverage] key '" + e.key + "'");
            auto& c = cfg.coverage;
            if (e.key == "total") {
                c.distances.total = parse_distance_spec(e, DistanceRole::TOTAL);
                have_total = true;
            } else if (e.key == "cab_to_dp") {
                c.distances.cab_to_dp = parse_distance_spec(e, DistanceRole::CAB_TO_DP);
                have_cab = true;
            } else if (e.key == "dp_to_home") {
                c.distances.dp_to_home = parse_distance_spec(e, DistanceRole::DP_TO_HOME);
                have_dp = true;
            } else if (e.key == "n_samples") {
                const long long n = kv_int(e);
                if (n < 1)
                    throw validation_error(origin + ":" + std::to_string(e.line) +
                                           ": n_samples must be >= 1");
                c.n_samples = static_cast<std::uint64_t>(n);
            } else if (e.key == "seed") {
                c.seed = static_cast<std::uint64_t>(kv_int(e));
            } else if (e.key == "thresholds_mbps") {
                c.thresholds_mbps = parse_double_list(e);
            }
            continue;
        }
        // output
        if (!kOutputKeys.count(e.key))
            throw validation_error(origin + ":" + std::to_string(e.line) +
                                   ": unknown [output] key '" + e.key + "'");
        if (e.key == "dir") {
            cfg.output.dir = e.value;
        } else {
            cfg.output.csv = false;
            cfg.output.svg = false;
            std::istringstream in(e.value);
            std::string item;
            while (std::getline(in, item, ',')) {
                if (item == "csv") cfg.output.csv = true;
                else if (item == "svg") cfg.output.svg = true;
                else throw validation_error(origin + ":" + std::to_string(e.line) +
                                            ": unknown format '" + item + "'");
            }
        }
    }

    if (!have_mode)
        throw validation_error(origin + ": required key 'mode' missing from [scenario]");
    if (!have_n_op)
        throw validation_error(origin + ": required key 'n_op' missing from [scenario]");
    if (have_total && (have_cab || have_dp))
        throw validation_error(origin + ": give either 'total' or the cab_to_dp/dp_to_home pair");
    if (!have_total && (have_cab != have_dp))
        throw validation_error(origin + ": cab_to_dp and dp_to_home must be given together");
    if (!have_total && !have_cab)
        cfg.coverage.distances = default_distance_model();
    if (cfg.coverage.thresholds_mbps.empty())
        cfg.coverage.thresholds_mbps = default_thresholds_mbps();
    if (cfg.scenario.distance_list_m.empty())
        for (int d = 50; d <= 1000; d += 50)
            cfg.scenario.distance_list_m.push_back(d);
    if (cfg.scenario.f_max_list_hz.empty())
        cfg.scenario.f_max_list_hz = {17.664e6, 35.2e6, 52.8e6, 70.4e6, 88e6, 105.6e6};
    if (cfg.scenario.sweep_modes.empty())
        cfg.scenario.sweep_modes = {cfg.scenario.mode};

    // cross-field checks (the scenario constructor re-validates, but config
    // errors should carry the config exit code and file name)
    if (cfg.scenario.mode == Mode::FULL_VECTOR && cfg.scenario.n_op != 1)
        throw validation_error(origin + ": FULL_VECTOR requires n_op = 1");
    if (cfg.scenario.n_op < 1)
        throw validation_error(origin + ": n_op must be >= 1");
    if (cfg.scenario.op < 0 || cfg.scenario.op >= cfg.scenario.n_op)
        throw validation_error(origin + ": op must lie in [0, n_op)");
    return cfg;
}

ScenarioConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw validation_error("cannot open config file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path);
}

LinkScenario build_scenario(const ScenarioConfig& cfg) {
    return build_scenario(cfg, cfg.scenario.f_max_hz, cfg.scenario.mode);
}

LinkScenario build_scenario(const ScenarioConfig& cfg, double f_max_hz, Mode mode) {
    const auto& s = cfg.scenario;
    LinkScenario sc;
    sc.mode = mode;
    sc.n_op = s.n_op;
    sc.n_us = s.n_us;
    sc.r_v_db = s.r_v_db;
    sc.psd_tx_dbm_hz = s.psd_tx_dbm_hz;
    sc.noise_bg_dbm_hz = s.noise_bg_dbm_hz;
    sc.gamma_db = s.gamma_db;
    sc.margin_db = s.margin_db;
    sc.coding_gain_db = s.coding_gain_db;
    sc.b_max = s.b_max;
    sc.f_sym_hz = s.f_sym_hz;
    sc.grid.delta_f_hz = s.delta_f_hz;
    sc.grid.f_start_hz = s.f_start_hz;
    sc.grid.f_max_hz = f_max_hz;
    sc.params = cfg.cable_file.empty() ? default_cable()
                                       : load_cable_file(cfg.cable_file);
    if (f_max_hz > kLegacyEdgeHz) {
        sc.alloc = allocate_subbands(s.n_op, f_max_hz, s.width_hz, s.order);
    } else {
        sc.alloc = SubBandAllocation{};
        sc.alloc.n_op = s.n_op;
    }
    sc.validate();
    return sc;
}

} // namespace sbvsim
