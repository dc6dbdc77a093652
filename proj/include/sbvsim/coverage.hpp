#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sbvsim/linkrate.hpp"

namespace sbvsim {

enum class DistanceKind { EMPIRICAL, LOGNORMAL, CONSTANT };
enum class DistanceRole { CAB_TO_DP, DP_TO_HOME, TOTAL };

/// Stochastic model of a loop-length component. Sampling is by inverse
/// CDF; EMPIRICAL inversion is piecewise-linear between tabulated points.
struct DistanceDistribution {
    DistanceKind kind = DistanceKind::CONSTANT;
    DistanceRole role = DistanceRole::TOTAL;

    double mu_log = 0.0;     // LOGNORMAL: mean of log-meters
    double sigma_log = 1.0;  // LOGNORMAL: std of log-meters, > 0
    double d_m = 0.0;        // CONSTANT
    std::vector<double> distances_m;  // EMPIRICAL, strictly increasing
    std::vector<double> cdf;          // EMPIRICAL, nondecreasing to 1

    static DistanceDistribution lognormal_median(double median_m, double sigma,
                                                 DistanceRole role);
    static DistanceDistribution constant(double d_m, DistanceRole role);
    static DistanceDistribution empirical(std::vector<double> distances_m,
                                          std::vector<double> cdf,
                                          DistanceRole role);

    void validate() const;
    /// Inverse CDF; u in [0, 1) (domain_error otherwise).
    double quantile(double u) const;
};

/// CAB-to-terminal distance: either one TOTAL distribution or the sum of
/// CAB_TO_DP and DP_TO_HOME components.
struct DistanceModel {
    std::optional<DistanceDistribution> total;
    std::optional<DistanceDistribution> cab_to_dp;
    std::optional<DistanceDistribution> dp_to_home;

    void validate() const;
    double sample(double u1, double u2) const;
};

/// Inverse-CDF sample from each component, summed.
double sample_distance(const DistanceDistribution& cab_to_dp,
                       const DistanceDistribution& dp_to_home,
                       double u1, double u2);

/// Loads a `distance_m,cdf` CSV into an EMPIRICAL distribution; validation
/// failures name the offending row.
DistanceDistribution load_empirical_cdf(const std::string& path);

/// The C-CDF: P(rate >= threshold) over the distance distribution.
struct CoverageCurve {
    std::vector<double> thresholds_mbps;
    std::vector<double> coverage;
    std::uint64_t n_samples = 0;
    std::uint64_t seed = 0;
    // labels for export
    Mode mode = Mode::SBV;
    int n_op = 1;
    int n_us = 24;
    double f_max_hz = 0.0;
};

/// Monte Carlo estimate of the coverage curve. Per-sample variates come
/// from (seed, sample index) through a counter-based generator, so the
/// result is byte-identical regardless of evaluation order or thread
/// count. Thresholds must be strictly increasing and nonempty.
CoverageCurve coverage_ccdf(const LinkScenario& sc, int op,
                            const DistanceModel& dists,
                            const std::vector<double>& thresholds_mbps,
                            std::uint64_t n_samples, std::uint64_t seed);

/// Default calibrated loop-length model: lognormal total distance,
/// median 230 m, sigma 0.75 (90th percentile ~600 m).
DistanceModel default_distance_model();

struct ClusterPreset {
    std::string name;       // "A" | "B"
    int n_op = 2;
    DistanceModel distances;
    std::string metadata;   // descriptive only
};

/// 'A' -> 3 operators, 'B' -> 2 operators; both use the default distance
/// model (override via ClusterRunOptions or config).
ClusterPreset cluster_preset(char name);

struct ClusterRunOptions {
    std::vector<int> n_us_list{24};
    std::vector<double> f_max_list{35.2e6};
    std::vector<double> thresholds_mbps;  // empty -> 0..300 step 5
    std::uint64_t n_samples = 100000;
    std::uint64_t seed = 42;
    int op = 0;
    std::optional<int> n_op_override;
    std::optional<DistanceModel> distance_override;
    double r_v_db = 10.0;
};

/// One NV + one SBV curve per (n_us, f_max) combination, plus a 17a-only
/// baseline (f_max = 17.664 MHz, non-vectored) per n_us.
std::vector<CoverageCurve> run_cluster_scenario(const ClusterPreset& preset,
                                                const ClusterRunOptions& options,
                                                const CableModelParams& cable);

std::vector<double> default_thresholds_mbps();

} // namespace sbvsim
