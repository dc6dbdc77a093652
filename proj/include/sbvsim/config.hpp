#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sbvsim/coverage.hpp"
#include "sbvsim/linkrate.hpp"

namespace sbvsim {

enum class SweepAxis { DISTANCE, FMAX };

/// Fully validated run description. Every field has a documented default
/// except scenario.mode and scenario.n_op; unknown keys or sections in the
/// config file are hard errors.
struct ScenarioConfig {
    std::string cable_file;  // empty -> built-in calibrated surrogate

    struct Scenario {
        Mode mode = Mode::SBV;
        int n_op = 1;
        int n_us = 24;
        double r_v_db = 10.0;
        double f_max_hz = 35.2e6;
        double width_hz = kDefaultSubBandWidthHz;
        AllocationOrder order = AllocationOrder::SNAKE;
        int op = 0;
        double d_m = 100.0;
        SweepAxis sweep_axis = SweepAxis::DISTANCE;
        std::vector<double> distance_list_m;   // default 50..1000 step 50
        std::vector<double> f_max_list_hz;     // default 17.664/35.2/52.8/70.4/88/105.6 MHz
        std::vector<Mode> sweep_modes;         // default {mode}
        // radio overrides
        double psd_tx_dbm_hz = -60.0;
        double noise_bg_dbm_hz = -140.0;
        double gamma_db = 9.75;
        double margin_db = 6.0;
        double coding_gain_db = 3.0;
        double b_max = 15.0;
        double f_sym_hz = 4000.0;
        double delta_f_hz = kDefaultToneSpacingHz;
        double f_start_hz = 25e3;
    } scenario;

    struct Coverage {
        DistanceModel distances;  // default: calibrated lognormal total
        std::uint64_t n_samples = 100000;
        std::uint64_t seed = 42;
        std::vector<double> thresholds_mbps;  // default 0..300 step 5
    } coverage;

    struct Output {
        std::string dir = ".";
        bool csv = true;
        bool svg = false;
    } output;
};

ScenarioConfig parse_config(const std::string& path);
ScenarioConfig parse_config_text(const std::string& text, const std::string& origin);

/// Assembles the validated LinkScenario (loads the cable file if set).
LinkScenario build_scenario(const ScenarioConfig& cfg);
LinkScenario build_scenario(const ScenarioConfig& cfg, double f_max_hz, Mode mode);

} // namespace sbvsim
