#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sbvsim/channel.hpp"
#include "sbvsim/coverage.hpp"
#include "sbvsim/errors.hpp"
#include "sbvsim/linkrate.hpp"
#include "sbvsim/spectrum.hpp"

namespace py = pybind11;
using namespace sbvsim;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Multi-operator DSL rate and coverage simulator (C++ core)";

    py::register_exception<domain_error>(m, "DomainError", PyExc_ValueError);
    py::register_exception<validation_error>(m, "ValidationError", PyExc_ValueError);

    m.attr("LEGACY_EDGE_HZ") = kLegacyEdgeHz;
    m.attr("DEFAULT_TONE_SPACING_HZ") = kDefaultToneSpacingHz;

    // channel
    py::class_<CableModelParams>(m, "CableModelParams")
        .def(py::init<>())
        .def_readwrite("k1_db_km_sqrtmhz", &CableModelParams::k1_db_km_sqrtmhz)
        .def_readwrite("k2_db_km_mhz", &CableModelParams::k2_db_km_mhz)
        .def_readwrite("kx_db", &CableModelParams::kx_db)
        .def_readwrite("f0_hz", &CableModelParams::f0_hz)
        .def_readwrite("d0_m", &CableModelParams::d0_m)
        .def_readwrite("f_valid_max_hz", &CableModelParams::f_valid_max_hz)
        .def("validate", &CableModelParams::validate);
    m.def("default_cable", &default_cable);
    m.def("load_cable_file", &load_cable_file, py::arg("path"));
    m.def("insertion_loss_db", &insertion_loss_db, py::arg("params"),
          py::arg("f_hz"), py::arg("d_m"));
    m.def("direct_gain", &direct_gain, py::arg("params"), py::arg("f_hz"),
          py::arg("d_m"));
    m.def("fext_gain", &fext_gain, py::arg("params"), py::arg("f_hz"),
          py::arg("d_m"), py::arg("n_disturbers"));

    // spectrum
    py::enum_<Direction>(m, "Direction")
        .value("DS", Direction::DS)
        .value("US", Direction::US);
    py::class_<BandInterval>(m, "BandInterval")
        .def_readonly("f_lo_hz", &BandInterval::f_lo_hz)
        .def_readonly("f_hi_hz", &BandInterval::f_hi_hz)
        .def_readonly("direction", &BandInterval::direction);
    py::class_<BandPlan>(m, "BandPlan")
        .def_readonly("intervals", &BandPlan::intervals)
        .def("is_ds", &BandPlan::is_ds, py::arg("f_hz"))
        .def("ds_width_below_edge_hz", &BandPlan::ds_width_below_edge_hz);
    m.def("build_17a_bandplan", &build_17a_bandplan);

    py::class_<ToneGrid>(m, "ToneGrid")
        .def(py::init<>())
        .def_readwrite("delta_f_hz", &ToneGrid::delta_f_hz)
        .def_readwrite("f_start_hz", &ToneGrid::f_start_hz)
        .def_readwrite("f_max_hz", &ToneGrid::f_max_hz)
        .def("tone_count", &ToneGrid::tone_count)
        .def("tone_center_hz", &ToneGrid::tone_center_hz, py::arg("index"));

    py::enum_<AllocationOrder>(m, "AllocationOrder")
        .value("LINEAR", AllocationOrder::LINEAR)
        .value("SNAKE", AllocationOrder::SNAKE);
    py::class_<SubBandBlock>(m, "SubBandBlock")
        .def_readonly("f_lo_hz", &SubBandBlock::f_lo_hz)
        .def_readonly("f_hi_hz", &SubBandBlock::f_hi_hz)
        .def_readonly("owner", &SubBandBlock::owner);
    py::class_<SubBandAllocation>(m, "SubBandAllocation")
        .def(py::init<>())
        .def_readonly("n_op", &SubBandAllocation::n_op)
        .def_readonly("f_max_hz", &SubBandAllocation::f_max_hz)
        .def_readonly("blocks", &SubBandAllocation::blocks)
        .def("owner_of", &SubBandAllocation::owner_of, py::arg("f_hz"))
        .def("operator_bandwidth_hz", &SubBandAllocation::operator_bandwidth_hz,
             py::arg("op"));
    m.def("allocate_subbands", &allocate_subbands, py::arg("n_op"),
          py::arg("f_max_hz"), py::arg("width_hz") = kDefaultSubBandWidthHz,
          py::arg("order") = AllocationOrder::SNAKE);

    py::class_<OperatorTones>(m, "OperatorTones")
        .def_readonly("legacy_ds_shared", &OperatorTones::legacy_ds_shared)
        .def_readonly("extension_owned", &OperatorTones::extension_owned);
    m.def("tones_for_operator", &tones_for_operator, py::arg("grid"),
          py::arg("plan"), py::arg("alloc"), py::arg("op"));

    // linkrate
    py::enum_<Mode>(m, "Mode")
        .value("NV", Mode::NV)
        .value("SBV", Mode::SBV)
        .value("FULL_VECTOR", Mode::FULL_VECTOR);
    py::class_<LinkScenario>(m, "LinkScenario")
        .def(py::init<>())
        .def_readwrite("mode", &LinkScenario::mode)
        .def_readwrite("n_op", &LinkScenario::n_op)
        .def_readwrite("n_us", &LinkScenario::n_us)
        .def_readwrite("r_v_db", &LinkScenario::r_v_db)
        .def_readwrite("psd_tx_dbm_hz", &LinkScenario::psd_tx_dbm_hz)
        .def_readwrite("noise_bg_dbm_hz", &LinkScenario::noise_bg_dbm_hz)
        .def_readwrite("gamma_db", &LinkScenario::gamma_db)
        .def_readwrite("margin_db", &LinkScenario::margin_db)
        .def_readwrite("coding_gain_db", &LinkScenario::coding_gain_db)
        .def_readwrite("b_max", &LinkScenario::b_max)
        .def_readwrite("f_sym_hz", &LinkScenario::f_sym_hz)
        .def_readwrite("grid", &LinkScenario::grid)
        .def_readwrite("params", &LinkScenario::params)
        .def_readwrite("alloc", &LinkScenario::alloc)
        .def("gap_eff_db", &LinkScenario::gap_eff_db)
        .def("validate", &LinkScenario::validate);
    py::class_<RateResult>(m, "RateResult")
        .def_readonly("aggregate_mbps", &RateResult::aggregate_mbps)
        .def_readonly("legacy_mbps", &RateResult::legacy_mbps)
        .def_readonly("extension_mbps", &RateResult::extension_mbps)
        .def("__repr__", [](const RateResult& r) {
            return "RateResult(aggregate=" + std::to_string(r.aggregate_mbps) +
                   " Mbit/s)";
        });
    m.def("tone_snr", &tone_snr, py::arg("scenario"), py::arg("f_hz"),
          py::arg("d_m"), py::arg("vectored"));
    m.def("bits_per_tone", &bits_per_tone, py::arg("snr"), py::arg("gap_eff_db"),
          py::arg("b_max"));
    m.def("operator_rate", &operator_rate, py::arg("scenario"), py::arg("op"),
          py::arg("d_m"));

    py::class_<SweepPoint>(m, "SweepPoint")
        .def_readonly("x", &SweepPoint::x)
        .def_readonly("op", &SweepPoint::op)
        .def_readonly("mode", &SweepPoint::mode)
        .def_readonly("rate", &SweepPoint::rate);
    m.def("sweep_fmax", &sweep_fmax, py::arg("base"), py::arg("d_m"),
          py::arg("f_max_list"), py::arg("modes"));
    m.def("sweep_distance", &sweep_distance, py::arg("scenario"), py::arg("op"),
          py::arg("d_list"));

    // coverage
    py::enum_<DistanceKind>(m, "DistanceKind")
        .value("EMPIRICAL", DistanceKind::EMPIRICAL)
        .value("LOGNORMAL", DistanceKind::LOGNORMAL)
        .value("CONSTANT", DistanceKind::CONSTANT);
    py::enum_<DistanceRole>(m, "DistanceRole")
        .value("CAB_TO_DP", DistanceRole::CAB_TO_DP)
        .value("DP_TO_HOME", DistanceRole::DP_TO_HOME)
        .value("TOTAL", DistanceRole::TOTAL);
    py::class_<DistanceDistribution>(m, "DistanceDistribution")
        .def_static("lognormal_median", &DistanceDistribution::lognormal_median,
                    py::arg("median_m"), py::arg("sigma"),
                    py::arg("role") = DistanceRole::TOTAL)
        .def_static("constant", &DistanceDistribution::constant, py::arg("d_m"),
                    py::arg("role") = DistanceRole::TOTAL)
        .def_static("empirical", &DistanceDistribution::empirical,
                    py::arg("distances_m"), py::arg("cdf"),
                    py::arg("role") = DistanceRole::TOTAL)
        .def_readonly("kind", &DistanceDistribution::kind)
        .def_readonly("role", &DistanceDistribution::role)
        .def_readonly("mu_log", &DistanceDistribution::mu_log)
        .def_readonly("sigma_log", &DistanceDistribution::sigma_log)
        .def_readonly("d_m", &DistanceDistribution::d_m)
        .def_readonly("distances_m", &DistanceDistribution::distances_m)
        .def_readonly("cdf", &DistanceDistribution::cdf)
        .def("quantile", &DistanceDistribution::quantile, py::arg("u"));
    py::class_<DistanceModel>(m, "DistanceModel")
        .def(py::init<>())
        .def_readwrite("total", &DistanceModel::total)
        .def_readwrite("cab_to_dp", &DistanceModel::cab_to_dp)
        .def_readwrite("dp_to_home", &DistanceModel::dp_to_home)
        .def("sample", &DistanceModel::sample, py::arg("u1"), py::arg("u2"));
    m.def("sample_distance", &sample_distance, py::arg("cab_to_dp"),
          py::arg("dp_to_home"), py::arg("u1"), py::arg("u2"));
    m.def("load_empirical_cdf", &load_empirical_cdf, py::arg("path"));
    m.def("default_distance_model", &default_distance_model);
    m.def("default_thresholds_mbps", &default_thresholds_mbps);

    py::class_<CoverageCurve>(m, "CoverageCurve")
        .def_readonly("thresholds_mbps", &CoverageCurve::thresholds_mbps)
        .def_readonly("coverage", &CoverageCurve::coverage)
        .def_readonly("n_samples", &CoverageCurve::n_samples)
        .def_readonly("seed", &CoverageCurve::seed)
        .def_readonly("mode", &CoverageCurve::mode)
        .def_readonly("n_op", &CoverageCurve::n_op)
        .def_readonly("n_us", &CoverageCurve::n_us)
        .def_readonly("f_max_hz", &CoverageCurve::f_max_hz);
    m.def("coverage_ccdf", &coverage_ccdf, py::arg("scenario"), py::arg("op"),
          py::arg("distances"), py::arg("thresholds_mbps"), py::arg("n_samples"),
          py::arg("seed"),
          py::call_guard<py::gil_scoped_release>());

    py::class_<ClusterPreset>(m, "ClusterPreset")
        .def_readonly("name", &ClusterPreset::name)
        .def_readonly("n_op", &ClusterPreset::n_op)
        .def_readonly("distances", &ClusterPreset::distances)
        .def_readonly("metadata", &ClusterPreset::metadata);
    m.def("cluster_preset", [](const std::string& name) {
        if (name.size() != 1)
            throw domain_error("cluster preset name must be 'A' or 'B'");
        return cluster_preset(name[0]);
    }, py::arg("name"));

    py::class_<ClusterRunOptions>(m, "ClusterRunOptions")
        .def(py::init<>())
        .def_readwrite("n_us_list", &ClusterRunOptions::n_us_list)
        .def_readwrite("f_max_list", &ClusterRunOptions::f_max_list)
        .def_readwrite("thresholds_mbps", &ClusterRunOptions::thresholds_mbps)
        .def_readwrite("n_samples", &ClusterRunOptions::n_samples)
        .def_readwrite("seed", &ClusterRunOptions::seed)
        .def_readwrite("op", &ClusterRunOptions::op)
        .def_readwrite("n_op_override", &ClusterRunOptions::n_op_override)
        .def_readwrite("distance_override", &ClusterRunOptions::distance_override)
        .def_readwrite("r_v_db", &ClusterRunOptions::r_v_db);
    m.def("run_cluster_scenario", &run_cluster_scenario, py::arg("preset"),
          py::arg("options"), py::arg("cable"),
          py::call_guard<py::gil_scoped_release>());

#ifdef VERSION_INFO
#define SBVSIM_STR(x) #x
#define SBVSIM_XSTR(x) SBVSIM_STR(x)
    m.attr("__version__") = SBVSIM_XSTR(VERSION_INFO);
#else
    m.attr("__version__") = "dev";
#endif
}
