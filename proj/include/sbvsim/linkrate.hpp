#pragma once

#include <string>
#include <vector>

#include "sbvsim/channel.hpp"
#include "sbvsim/spectrum.hpp"

namespace sbvsim {

enum class Mode { NV, SBV, FULL_VECTOR };

std::string to_string(Mode mode);
Mode mode_from_string(const std::string& s);  // throws validation_error

/// Everything needed to compute one operator's downstream rate at one
/// distance. Value type; all operations on it are pure.
///
/// Band semantics:
///  - legacy DS band (< 17.664 MHz): shared by all operators, always
///    non-vectored with n_us disturbers (the per-terminal 17a line rate);
///  - extension (>= 17.664 MHz): SBV -> the operator's own blocks,
///    vectored (background noise raised by r_v); NV -> the whole
///    extension, non-vectored with n_us disturbers;
///  - FULL_VECTOR: single operator, every tone vectored (independent of
///    n_us by construction).
struct LinkScenario {
    Mode mode = Mode::SBV;
    int n_op = 1;
    int n_us = 24;
    double r_v_db = 10.0;
    double psd_tx_dbm_hz = -60.0;
    double noise_bg_dbm_hz = -140.0;
    double gamma_db = 9.75;
    double margin_db = 6.0;
    double coding_gain_db = 3.0;
    double b_max = 15.0;
    double f_sym_hz = 4000.0;
    ToneGrid grid;
    CableModelParams params;
    SubBandAllocation alloc;

    double gap_eff_db() const { return gamma_db + margin_db - coding_gain_db; }
    void validate() const;  // throws validation_error
};

struct RateResult {
    double aggregate_mbps = 0.0;
    double legacy_mbps = 0.0;
    double extension_mbps = 0.0;
};

/// Per-tone SNR (linear). Vectored: noise = N_bg * 10^(r_v/10).
/// Non-vectored: noise = N_bg + P_tx * fext_gain(f, d, n_us).
/// Rejects tones outside the grid.
double tone_snr(const LinkScenario& sc, double f_hz, double d_m, bool vectored);

/// min(b_max, log2(1 + snr/10^(gap_eff_db/10))).
double bits_per_tone(double snr, double gap_eff_db, double b_max);

RateResult operator_rate(const LinkScenario& sc, int op, double d_m);

/// Precomputed per-tone constants for fast repeated evaluation of one
/// (scenario, operator) pair at many distances. Same arithmetic as
/// operator_rate; coverage sampling is built on this. Legacy and extension
/// sums are exposed separately so scenario sets sharing the legacy band
/// can reuse one evaluation per sampled distance.
class RateEvaluator {
  public:
    RateEvaluator(const LinkScenario& sc, int op);

    RateResult at_distance(double d_m) const;
    double legacy_bits(double d_m) const;
    double extension_bits(double d_m) const;
    RateResult combine(double legacy_bits_sum, double extension_bits_sum) const;

  private:
    struct ToneTerm {
        double loss_exp_per_m;  // h2(d) = exp(-loss_exp_per_m * d)
        double fext_per_m;      // fext(d) = h2 * fext_per_m * d
        bool vectored;
    };
    double bits_sum(const std::vector<ToneTerm>& terms,
                    const std::vector<double>& caps, double d_m) const;

    std::vector<ToneTerm> legacy_;
    std::vector<ToneTerm> extension_;
    // distance below which a vectored tone sits at the bit cap; descending
    // along each term list (loss grows with frequency)
    std::vector<double> legacy_cap_until_m_;
    std::vector<double> extension_cap_until_m_;
    double snr_num_vect_ = 0.0;  // P/(N*Rv)
    double inv_pn_ = 0.0;        // N/P
    double gap_lin_ = 1.0;
    double b_max_ = 15.0;
    double f_sym_hz_ = 4000.0;
};

struct SweepPoint {
    double x = 0.0;  ///< distance (m) or f_max (Hz) depending on the sweep
    int op = 0;
    Mode mode = Mode::SBV;
    RateResult rate;
};

/// One point per (f_max, mode, operator). The allocation is rebuilt per
/// f_max with the template's width and order; f_max values at or below the
/// legacy edge yield legacy-only rates.
std::vector<SweepPoint> sweep_fmax(const LinkScenario& base, double d_m,
                                   const std::vector<double>& f_max_list,
                                   const std::vector<Mode>& modes);

std::vector<SweepPoint> sweep_distance(const LinkScenario& sc, int op,
                                       const std::vector<double>& d_list);

} // namespace sbvsim
