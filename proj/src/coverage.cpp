#include "sbvsim/coverage.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

#include "sbvsim/csvio.hpp"
#include "sbvsim/errors.hpp"
#include "sbvsim/stats.hpp"

namespace sbvsim {

DistanceDistribution DistanceDistribution::lognormal_median(double median_m,
                                                            double sigma,
                                                            DistanceRole role) {
    DistanceDistribution d;
    d.kind = DistanceKind::LOGNORMAL;
    d.role = role;
    d.mu_log = std::log(median_m);
    d.sigma_log = sigma;
    d.validate();
    return d;
}

DistanceDistribution DistanceDistribution::constant(double d_m, DistanceRole role) {
    DistanceDistribution d;
    d.kind = DistanceKind::CONSTANT;
    d.role = role;
    d.d_m = d_m;
    d.validate();
    return d;
}

DistanceDistribution DistanceDistribution::empirical(std::vector<double> distances_m,
                                                     std::vector<double> cdf,
                                                     DistanceRole role) {
    DistanceDistribution d;
    d.kind = DistanceKind::EMPIRICAL;
    d.role = role;
    d.distances_m = std::move(distances_m);
    d.cdf = std::move(cdf);
    d.validate();
    return d;
}

void DistanceDistribution::validate() const {
    switch (kind) {
        case DistanceKind::LOGNORMAL:
            if (!(sigma_log > 0.0))
                throw validation_error("distance distribution: sigma must be > 0");
            return;
        case DistanceKind::CONSTANT:
            if (d_m < 0.0)
                throw validation_error("distance distribution: constant distance must be >= 0");
            return;
        case DistanceKind::EMPIRICAL: {
            if (distances_m.size() != cdf.size() || distances_m.size() < 2)
                throw validation_error("empirical CDF: need at least two (distance, cdf) points");
            for (std::size_t i = 0; i < distances_m.size(); ++i) {
                std::ostringstream row;
                row << "empirical CDF row " << i + 1;
                if (distances_m[i] < 0.0)
                    throw validation_error(row.str() + ": negative distance");
                if (i > 0 && !(distances_m[i] > distances_m[i - 1]))
                    throw validation_error(row.str() + ": distances not strictly increasing");
                if (cdf[i] < 0.0 || cdf[i] > 1.0 + 1e-12)
                    throw validation_error(row.str() + ": cdf value outside [0, 1]");
                if (i > 0 && cdf[i] < cdf[i - 1])
                    throw validation_error(row.str() + ": cdf not nondecreasing");
            }
            if (std::fabs(cdf.back() - 1.0) > 1e-6) {
                std::ostringstream msg;
                msg << "empirical CDF row " << cdf.size()
                    << ": cdf must reach 1 (got " << cdf.back() << ")";
                throw validation_error(msg.str());
            }
            return;
        }
    }
}

double DistanceDistribution::quantile(double u) const {
    if (!(u >= 0.0) || u >= 1.0)
        throw domain_error("quantile: variate must lie in [0, 1)");
    switch (kind) {
        case DistanceKind::CONSTANT:
            return d_m;
        case DistanceKind::LOGNORMAL: {
            if (u == 0.0)
                return 0.0;
            return std::exp(mu_log + sigma_log * normal_quantile(u));
        }
        case DistanceKind::EMPIRICAL: {
            const double top = std::min(cdf.back(), 1.0);
            if (u <= cdf.front())
                return distances_m.front();
            if (u >= top)
                return distances_m.back();
            const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
            const std::size_t hi = static_cast<std::size_t>(it - cdf.begin());
            const std::size_t lo = hi - 1;
            const double span = cdf[hi] - cdf[lo];
            if (span <= 0.0)
                return distances_m[lo];
            const double t = (u - cdf[lo]) / span;
            return distances_m[lo] + t * (distances_m[hi] - distances_m[lo]);
        }
    }
    return 0.0;
}

void DistanceModel::validate() const {
    if (total) {
        if (cab_to_dp || dp_to_home)
            throw validation_error("distance model: give either a total distribution or the CAB/Dp pair, not both");
        total->validate();
        return;
    }
    if (!cab_to_dp || !dp_to_home)
        throw validation_error("distance model: need a total distribution or both CAB-to-Dp and Dp-to-home");
    cab_to_dp->validate();
    dp_to_home->validate();
}

double DistanceModel::sample(double u1, double u2) const {
    if (total)
        return total->quantile(u1);
    return sample_distance(*cab_to_dp, *dp_to_home, u1, u2);
}

double sample_distance(const DistanceDistribution& cab_to_dp,
                       const DistanceDistribution& dp_to_home,
                       double u1, double u2) {
    return cab_to_dp.quantile(u1) + dp_to_home.quantile(u2);
}

DistanceDistribution load_empirical_cdf(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw validation_error("cannot open empirical CDF file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    const CsvTable table = parse_csv(buf.str());
    if (table.header.size() != 2 || table.header[0] != "distance_m" ||
        table.header[1] != "cdf")
        throw validation_error(path + ": expected header 'distance_m,cdf'");
    std::vector<double> d, f;
    std::size_t row_no = 1;
    for (const auto& row : table.rows) {
        ++row_no;
        if (row.size() != 2)
            throw validation_error(path + ": row " + std::to_string(row_no) +
                                   " does not have two columns");
        try {
            d.push_back(std::stod(row[0]));
            f.push_back(std::stod(row[1]));
        } catch (const std::exception&) {
            throw validation_error(path + ": row " + std::to_string(row_no) +
                                   " is not numeric");
        }
    }
    return DistanceDistribution::empirical(std::move(d), std::move(f),
                                           DistanceRole::TOTAL);
}

DistanceModel default_distance_model() {
    DistanceModel m;
    m.total = DistanceDistribution::lognormal_median(230.0, 0.75,
                                                     DistanceRole::TOTAL);
    return m;
}

std::vector<double> default_thresholds_mbps() {
    std::vector<double> t;
    for (int v = 0; v <= 300; v += 5)
        t.push_back(static_cast<double>(v));
    return t;
}

namespace {

void check_thresholds(const std::vector<double>& thresholds_mbps) {
    if (thresholds_mbps.empty())
        throw domain_error("coverage_ccdf: empty threshold list");
    for (std::size_t i = 1; i < thresholds_mbps.size(); ++i)
        if (!(thresholds_mbps[i] > thresholds_mbps[i - 1]))
            throw domain_error("coverage_ccdf: thresholds must be strictly increasing");
}

// per-sample work is independent and counter-seeded, so any thread
// partition yields identical output
void parallel_samples(std::uint64_t n_samples,
                      const std::function<void(std::uint64_t, std::uint64_t)>& worker) {
    const unsigned hw = std::thread::hardware_concurrency();
    const std::uint64_t n_threads =
        std::max<std::uint64_t>(1, std::min<std::uint64_t>(hw ? hw : 1, 8));
    if (n_threads > 1 && n_samples >= 4096) {
        std::vector<std::thread> pool;
        const std::uint64_t chunk = (n_samples + n_threads - 1) / n_threads;
        for (std::uint64_t t = 0; t < n_threads; ++t) {
            const std::uint64_t begin = t * chunk;
            const std::uint64_t end = std::min(n_samples, begin + chunk);
            if (begin < end)
                pool.emplace_back(worker, begin, end);
        }
        for (auto& th : pool)
            th.join();
    } else {
        worker(0, n_samples);
    }
}

// one pass over sorted rates gives every threshold count
std::vector<double> ccdf_of(std::vector<double> rates,
                            const std::vector<double>& thresholds_mbps) {
    std::sort(rates.begin(), rates.end());
    std::vector<double> coverage(thresholds_mbps.size());
    for (std::size_t k = 0; k < thresholds_mbps.size(); ++k) {
        const auto it =
            std::lower_bound(rates.begin(), rates.end(), thresholds_mbps[k]);
        coverage[k] = static_cast<double>(rates.end() - it) /
                      static_cast<double>(rates.size());
    }
    return coverage;
}

CoverageCurve labeled_curve(const LinkScenario& sc,
                            const std::vector<double>& thresholds_mbps,
                            std::vector<double> coverage,
                            std::uint64_t n_samples, std::uint64_t seed) {
    CoverageCurve curve;
    curve.thresholds_mbps = thresholds_mbps;
    curve.coverage = std::move(coverage);
    curve.n_samples = n_samples;
    curve.seed = seed;
    curve.mode = sc.mode;
    curve.n_op = sc.n_op;
    curve.n_us = sc.n_us;
    curve.f_max_hz = sc.grid.f_max_hz;
    return curve;
}

} // namespace

CoverageCurve coverage_ccdf(const LinkScenario& sc, int op,
                            const DistanceModel& dists,
                            const std::vector<double>& thresholds_mbps,
                            std::uint64_t n_samples, std::uint64_t seed) {
    if (n_samples < 1)
        throw domain_error("coverage_ccdf: need at least one sample");
    check_thresholds(thresholds_mbps);
    dists.validate();

    const RateEvaluator eval(sc, op);
    std::vector<double> rates(n_samples);
    parallel_samples(n_samples, [&](std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t i = begin; i < end; ++i) {
            const double u1 = u01_from_counter(seed, 2 * i);
            const double u2 = u01_from_counter(seed, 2 * i + 1);
            const double d = dists.sample(u1, u2);
            rates[i] = eval.at_distance(d).aggregate_mbps;
        }
    });
    return labeled_curve(sc, thresholds_mbps, ccdf_of(std::move(rates), thresholds_mbps),
                         n_samples, seed);
}

ClusterPreset cluster_preset(char name) {
    ClusterPreset p;
    p.distances = default_distance_model();
    switch (name) {
        case 'A':
        case 'a':
            p.name = "A";
            p.n_op = 3;
            p.metadata = "15 largest cities, ~15% of population";
            return p;
        case 'B':
        case 'b':
            p.name = "B";
            p.n_op = 2;
            p.metadata = "~1,120 medium cities, ~45% of population";
            return p;
        default:
            throw domain_error("unknown cluster preset (expected A or B)");
    }
}

std::vector<CoverageCurve> run_cluster_scenario(const ClusterPreset& preset,
                                                const ClusterRunOptions& options,
                                                const CableModelParams& cable) {
    if (options.n_samples < 1)
        throw domain_error("run_cluster_scenario: need at least one sample");
    const int n_op = options.n_op_override.value_or(preset.n_op);
    const DistanceModel& dists =
        options.distance_override ? *options.distance_override : preset.distances;
    const std::vector<double> thresholds = options.thresholds_mbps.empty()
                                               ? default_thresholds_mbps()
                                               : options.thresholds_mbps;
    check_thresholds(thresholds);
    dists.validate();

    LinkScenario base;
    base.n_op = n_op;
    base.r_v_db = options.r_v_db;
    base.params = cable;

    const std::uint64_t n = options.n_samples;
    std::vector<double> distances(n);
    parallel_samples(n, [&](std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t i = begin; i < end; ++i) {
            const double u1 = u01_from_counter(options.seed, 2 * i);
            const double u2 = u01_from_counter(options.seed, 2 * i + 1);
            distances[i] = dists.sample(u1, u2);
        }
    });

    std::vector<CoverageCurve> curves;
    for (const int n_us : options.n_us_list) {
        LinkScenario base_17a = base;
        base_17a.mode = Mode::NV;
        base_17a.n_us = n_us;
        base_17a.grid.f_max_hz = kLegacyEdgeHz;
        base_17a.alloc = SubBandAllocation{};
        base_17a.alloc.n_op = n_op;
        // the shared non-vectored legacy band is identical for every mode
        // and f_max of this run; evaluate it once per sample
        const RateEvaluator legacy_eval(base_17a, options.op);

        struct CurveSlot {
            LinkScenario sc;
            RateEvaluator eval;
            std::vector<double> rates;
        };
        std::vector<CurveSlot> slots;
        for (const double f_max : options.f_max_list) {
            for (const Mode mode : {Mode::SBV, Mode::NV}) {
                LinkScenario sc = base;
                sc.mode = mode;
                sc.n_us = n_us;
                sc.grid.f_max_hz = f_max;
                sc.alloc = allocate_subbands(n_op, f_max, kDefaultSubBandWidthHz,
                                             AllocationOrder::SNAKE);
                RateEvaluator eval(sc, options.op);
                slots.push_back({sc, std::move(eval), std::vector<double>(n)});
            }
        }
        std::vector<double> baseline_rates(n);

        parallel_samples(n, [&](std::uint64_t begin, std::uint64_t end) {
            for (std::uint64_t i = begin; i < end; ++i) {
                const double d = distances[i];
                const double lb = legacy_eval.legacy_bits(d);
                for (auto& slot : slots) {
                    slot.rates[i] =
                        slot.eval.combine(lb, slot.eval.extension_bits(d))
                            .aggregate_mbps;
                }
                baseline_rates[i] = legacy_eval.combine(lb, 0.0).aggregate_mbps;
            }
        });

        for (auto& slot : slots) {
            curves.push_back(labeled_curve(slot.sc, thresholds,
                                           ccdf_of(std::move(slot.rates), thresholds),
                                           n, options.seed));
        }
        curves.push_back(labeled_curve(base_17a, thresholds,
                                       ccdf_of(std::move(baseline_rates), thresholds),
                                       n, options.seed));
    }
    return curves;
}

} // namespace sbvsim
