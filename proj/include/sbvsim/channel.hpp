#pragma once

#include <string>

namespace sbvsim {

/// Parametric twisted-pair model: two-coefficient attenuation law plus a
/// power-sum FEXT coupling law. All coefficients are configurable; the
/// built-in defaults are calibrated for desk-scale studies, not measured
/// cable data.
struct CableModelParams {
    double k1_db_km_sqrtmhz = 4.0;   ///< attenuation, dB per km per sqrt(MHz)
    double k2_db_km_mhz = 0.4;       ///< attenuation, dB per km per MHz
    double kx_db = -22.0;            ///< FEXT coupling at (f0, d0), 49 disturbers; negative
    double f0_hz = 1e6;              ///< FEXT reference frequency
    double d0_m = 1000.0;            ///< FEXT reference coupling length
    double f_valid_max_hz = 200e6;   ///< upper model validity frequency

    /// Throws validation_error if any invariant is violated.
    void validate() const;
};

/// The calibrated surrogate shipped with the project (same values as
/// data/default.cable).
CableModelParams default_cable();

/// Loads a `[cable]` section file with keys exactly
/// k1, k2, kx_db, f0_hz, d0_m, f_valid_max_hz. Unknown keys are errors.
CableModelParams load_cable_file(const std::string& path);

/// (k1*sqrt(f/1MHz) + k2*(f/1MHz)) * d/1km, in dB.
/// Rejects f outside (0, f_valid_max] and negative d.
double insertion_loss_db(const CableModelParams& params, double f_hz, double d_m);

/// 10^(-insertion_loss_db/10), in (0, 1]; 1 at d = 0.
double direct_gain(const CableModelParams& params, double f_hz, double d_m);

/// Power-sum FEXT power gain:
///   direct_gain * 10^(kx_db/10) * (n/49)^0.6 * (d/d0) * (f/f0)^2.
/// Zero when n_disturbers = 0 or d = 0; rejects negative n_disturbers.
double fext_gain(const CableModelParams& params, double f_hz, double d_m,
                 int n_disturbers);

} // namespace sbvsim
