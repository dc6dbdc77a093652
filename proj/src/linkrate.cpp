#include "sbvsim/linkrate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "sbvsim/errors.hpp"

namespace sbvsim {

namespace {

constexpr double kLn10Over10 = 0.23025850929940457;  // ln(10)/10
constexpr double kInvLn2 = 1.4426950408889634;       // 1/ln(2)

double db_to_lin(double db) {
    return std::pow(10.0, db / 10.0);
}

} // namespace

std::string to_string(Mode mode) {
    switch (mode) {
        case Mode::NV: return "NV";
        case Mode::SBV: return "SBV";
        case Mode::FULL_VECTOR: return "FULL_VECTOR";
    }
    return "?";
}

Mode mode_from_string(const std::string& s) {
    if (s == "NV") return Mode::NV;
    if (s == "SBV") return Mode::SBV;
    if (s == "FULL_VECTOR") return Mode::FULL_VECTOR;
    throw validation_error("unknown mode '" + s + "' (expected NV, SBV or FULL_VECTOR)");
}

void LinkScenario::validate() const {
    if (n_op < 1)
        throw validation_error("scenario: n_op must be >= 1");
    if (n_us < 0)
        throw validation_error("scenario: n_us must be >= 0");
    if (r_v_db < 0.0)
        throw validation_error("scenario: r_v_db must be >= 0");
    if (!(b_max >= 1.0))
        throw validation_error("scenario: b_max must be >= 1");
    if (!(f_sym_hz > 0.0))
        throw validation_error("scenario: f_sym must be > 0");
    if (!(gap_eff_db() > 0.0))
        throw validation_error("scenario: effective gap gamma + margin - coding_gain must be > 0 dB");
    grid.validate();
    params.validate();
    if (grid.f_max_hz > params.f_valid_max_hz)
        throw validation_error("scenario: grid f_max exceeds cable model validity");
    if (mode == Mode::FULL_VECTOR && n_op != 1)
        throw validation_error("scenario: FULL_VECTOR requires n_op = 1");
    if (mode == Mode::SBV || mode == Mode::FULL_VECTOR) {
        if (std::abs(alloc.f_max_hz - grid.f_max_hz) > 1e-3 &&
            grid.f_max_hz > kLegacyEdgeHz)
            throw validation_error("scenario: sub-band allocation does not cover the tone grid");
        if (grid.f_max_hz > kLegacyEdgeHz && alloc.n_op != n_op)
            throw validation_error("scenario: allocation operator count differs from n_op");
    }
}

double tone_snr(const LinkScenario& sc, double f_hz, double d_m, bool vectored) {
    if (f_hz < sc.grid.f_start_hz || f_hz >= sc.grid.f_max_hz) {
        std::ostringstream msg;
        msg << "tone " << f_hz << " Hz outside grid ["
            << sc.grid.f_start_hz << ", " << sc.grid.f_max_hz << ")";
        throw domain_error(msg.str());
    }
    if (d_m < 0.0)
        throw domain_error("distance must be nonnegative");

    const double p_tx = db_to_lin(sc.psd_tx_dbm_hz);      // mW/Hz
    const double n_bg = db_to_lin(sc.noise_bg_dbm_hz);    // mW/Hz
    const double signal = p_tx * direct_gain(sc.params, f_hz, d_m);
    const double noise = vectored
        ? n_bg * db_to_lin(sc.r_v_db)
        : n_bg + p_tx * fext_gain(sc.params, f_hz, d_m, sc.n_us);
    return signal / noise;
}

double bits_per_tone(double snr, double gap_eff_db, double b_max) {
    if (snr < 0.0)
        throw domain_error("bits_per_tone: snr must be nonnegative");
    const double bits = std::log2(1.0 + snr / db_to_lin(gap_eff_db));
    return std::min(b_max, bits);
}

RateEvaluator::RateEvaluator(const LinkScenario& sc, int op) {
    sc.validate();
    if (op < 0 || op >= sc.n_op)
        throw domain_error("operator index out of range");

    const double p_tx = db_to_lin(sc.psd_tx_dbm_hz);
    const double n_bg = db_to_lin(sc.noise_bg_dbm_hz);
    snr_num_vect_ = p_tx / (n_bg * db_to_lin(sc.r_v_db));
    inv_pn_ = n_bg / p_tx;
    gap_lin_ = db_to_lin(sc.gap_eff_db());
    b_max_ = sc.b_max;
    f_sym_hz_ = sc.f_sym_hz;

    const BandPlan plan = build_17a_bandplan();
    const double coupling = db_to_lin(sc.params.kx_db);
    const double n_factor =
        sc.n_us > 0 ? std::pow(sc.n_us / 49.0, 0.6) : 0.0;

    // a vectored tone stays at the bit cap while
    // snr_num_vect * exp(-loss * d) >= gap * (2^b_max - 1)
    const double cap_snr = gap_lin_ * (std::pow(2.0, b_max_) - 1.0);
    const double cap_log = std::log(snr_num_vect_ / cap_snr);

    const int first = sc.grid.first_tone_index();
    const int end = sc.grid.end_tone_index();
    for (int i = first; i < end; ++i) {
        const double f = sc.grid.tone_center_hz(i);
        const bool legacy = f < kLegacyEdgeHz;
        bool used = false;
        bool vectored = false;
        if (legacy) {
            used = plan.is_ds(f);
            vectored = sc.mode == Mode::FULL_VECTOR;
        } else {
            switch (sc.mode) {
                case Mode::SBV:
                    used = sc.alloc.owner_of(f) == op;
                    vectored = true;
                    break;
                case Mode::NV:
                    used = true;
                    vectored = false;
                    break;
                case Mode::FULL_VECTOR:
                    used = true;
                    vectored = true;
                    break;
            }
        }
        if (!used)
            continue;

        ToneTerm t;
        const double f_mhz = f / 1e6;
        const double il_per_km = sc.params.k1_db_km_sqrtmhz * std::sqrt(f_mhz) +
                                 sc.params.k2_db_km_mhz * f_mhz;
        t.loss_exp_per_m = il_per_km * kLn10Over10 / 1000.0;
        const double f_ratio = f / sc.params.f0_hz;
        t.fext_per_m = coupling * n_factor * f_ratio * f_ratio / sc.params.d0_m;
        t.vectored = vectored;
        const double cap_until =
            !vectored ? 0.0
            : cap_log <= 0.0 ? 0.0
            : t.loss_exp_per_m > 0.0 ? cap_log / t.loss_exp_per_m
                                     : std::numeric_limits<double>::infinity();
        if (legacy) {
            legacy_.push_back(t);
            legacy_cap_until_m_.push_back(cap_until);
        } else {
            extension_.push_back(t);
            extension_cap_until_m_.push_back(cap_until);
        }
    }
}

double RateEvaluator::bits_sum(const std::vector<ToneTerm>& terms,
                               const std::vector<double>& caps,
                               double d_m) const {
    // loss grows with frequency, so the capped region is a prefix of the
    // frequency-ordered term list; counting it avoids the transcendentals
    std::size_t begin = 0;
    double sum = 0.0;
    if (!terms.empty() && terms.front().vectored) {
        const auto it = std::partition_point(
            caps.begin(), caps.end(), [d_m](double c) { return d_m <= c; });
        begin = static_cast<std::size_t>(it - caps.begin());
        sum = b_max_ * static_cast<double>(begin);
    }
    for (std::size_t k = begin; k < terms.size(); ++k) {
        const ToneTerm& t = terms[k];
        double snr;
        if (t.vectored) {
            snr = snr_num_vect_ * std::exp(-t.loss_exp_per_m * d_m);
        } else {
            // 1 / ((N/P) / h2 + fext_per_m * d)
            snr = 1.0 / (inv_pn_ * std::exp(t.loss_exp_per_m * d_m) +
                         t.fext_per_m * d_m);
        }
        sum += std::min(b_max_, std::log1p(snr / gap_lin_) * kInvLn2);
    }
    return sum;
}

double RateEvaluator::legacy_bits(double d_m) const {
    if (d_m < 0.0)
        throw domain_error("distance must be nonnegative");
    return bits_sum(legacy_, legacy_cap_until_m_, d_m);
}

double RateEvaluator::extension_bits(double d_m) const {
    if (d_m < 0.0)
        throw domain_error("distance must be nonnegative");
    return bits_sum(extension_, extension_cap_until_m_, d_m);
}

RateResult RateEvaluator::combine(double legacy_bits_sum,
                                  double extension_bits_sum) const {
    RateResult r;
    r.legacy_mbps = f_sym_hz_ * legacy_bits_sum / 1e6;
    r.extension_mbps = f_sym_hz_ * extension_bits_sum / 1e6;
    r.aggregate_mbps = r.legacy_mbps + r.extension_mbps;
    return r;
}

RateResult RateEvaluator::at_distance(double d_m) const {
    return combine(legacy_bits(d_m), extension_bits(d_m));
}

RateResult operator_rate(const LinkScenario& sc, int op, double d_m) {
    return RateEvaluator(sc, op).at_distance(d_m);
}

std::vector<SweepPoint> sweep_fmax(const LinkScenario& base, double d_m,
                                   const std::vector<double>& f_max_list,
                                   const std::vector<Mode>& modes) {
    if (f_max_list.empty())
        throw domain_error("sweep_fmax: empty f_max list");
    for (std::size_t i = 1; i < f_max_list.size(); ++i)
        if (!(f_max_list[i] > f_max_list[i - 1]))
            throw domain_error("sweep_fmax: f_max list must be ascending");
    if (modes.empty())
        throw domain_error("sweep_fmax: no modes requested");

    std::vector<SweepPoint> out;
    for (const double f_max : f_max_list) {
        for (const Mode mode : modes) {
            LinkScenario sc = base;
            sc.mode = mode;
            sc.grid.f_max_hz = f_max;
            if (f_max > kLegacyEdgeHz) {
                sc.alloc = allocate_subbands(sc.n_op, f_max,
                                             base.alloc.width_nominal_hz,
                                             base.alloc.order);
            } else {
                sc.alloc = SubBandAllocation{};
                sc.alloc.n_op = sc.n_op;
            }
            for (int op = 0; op < sc.n_op; ++op) {
                SweepPoint p;
                p.x = f_max;
                p.op = op;
                p.mode = mode;
                p.rate = operator_rate(sc, op, d_m);
                out.push_back(p);
            }
        }
    }
    return out;
}

std::vector<SweepPoint> sweep_distance(const LinkScenario& sc, int op,
                                       const std::vector<double>& d_list) {
    if (d_list.empty())
        throw domain_error("sweep_distance: empty distance list");
    for (const double d : d_list)
        if (d < 0.0)
            throw domain_error("sweep_distance: distances must be nonnegative");

    const RateEvaluator eval(sc, op);
    std::vector<SweepPoint> out;
    out.reserve(d_list.size());
    for (const double d : d_list) {
        SweepPoint p;
        p.x = d;
        p.op = op;
        p.mode = sc.mode;
        p.rate = eval.at_distance(d);
        out.push_back(p);
    }
    return out;
}

} // namespace sbvsim
