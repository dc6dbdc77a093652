#include "sbvsim/channel.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "sbvsim/errors.hpp"
#include "sbvsim/kvfile.hpp"

namespace sbvsim {

void CableModelParams::validate() const {
    if (!(k1_db_km_sqrtmhz >= 0.0))
        throw validation_error("cable: k1 must be >= 0");
    if (!(k2_db_km_mhz >= 0.0))
        throw validation_error("cable: k2 must be >= 0");
    if (!(f0_hz > 0.0))
        throw validation_error("cable: f0_hz must be > 0");
    if (!(d0_m > 0.0))
        throw validation_error("cable: d0_m must be > 0");
    if (!(f_valid_max_hz > 0.0))
        throw validation_error("cable: f_valid_max_hz must be > 0");
    if (!(kx_db < 0.0))
        throw validation_error("cable: kx_db must be negative (coupling is a loss)");
}

CableModelParams default_cable() {
    return CableModelParams{};
}

CableModelParams load_cable_file(const std::string& path) {
    const KvFile kv = parse_kv_file(path);
    CableModelParams p;
    const std::set<std::string> known = {"k1", "k2", "kx_db", "f0_hz", "d0_m",
                                         "f_valid_max_hz"};
    for (const auto& section : kv.sections) {
        if (section != "cable") {
            throw validation_error(path + ": unknown section [" + section + "]");
        }
    }
    for (const auto& e : kv.entries) {
        if (e.section != "cable") {
            std::ostringstream msg;
            msg << path << ":" << e.line << ": key '" << e.key
                << "' outside the [cable] section";
            throw validation_error(msg.str());
        }
        if (!known.count(e.key)) {
            std::ostringstream msg;
            msg << path << ":" << e.line << ": unknown cable key '" << e.key << "'";
            throw validation_error(msg.str());
        }
        const double v = kv_double(e);
        if (e.key == "k1") p.k1_db_km_sqrtmhz = v;
        else if (e.key == "k2") p.k2_db_km_mhz = v;
        else if (e.key == "kx_db") p.kx_db = v;
        else if (e.key == "f0_hz") p.f0_hz = v;
        else if (e.key == "d0_m") p.d0_m = v;
        else if (e.key == "f_valid_max_hz") p.f_valid_max_hz = v;
    }
    p.validate();
    return p;
}

namespace {

void check_domain(const CableModelParams& params, double f_hz, double d_m) {
    if (!(f_hz > 0.0) || f_hz > params.f_valid_max_hz) {
        std::ostringstream msg;
        msg << "frequency " << f_hz << " Hz outside model validity (0, "
            << params.f_valid_max_hz << "]";
        throw domain_error(msg.str());
    }
    if (d_m < 0.0)
        throw domain_error("distance must be nonnegative");
}

} // namespace

double insertion_loss_db(const CableModelParams& params, double f_hz, double d_m) {
    check_domain(params, f_hz, d_m);
    const double f_mhz = f_hz / 1e6;
    const double per_km =
        params.k1_db_km_sqrtmhz * std::sqrt(f_mhz) + params.k2_db_km_mhz * f_mhz;
    return per_km * (d_m / 1000.0);
}

double direct_gain(const CableModelParams& params, double f_hz, double d_m) {
    return std::pow(10.0, -insertion_loss_db(params, f_hz, d_m) / 10.0);
}

double fext_gain(const CableModelParams& params, double f_hz, double d_m,
                 int n_disturbers) {
    if (n_disturbers < 0)
        throw domain_error("disturber count must be nonnegative");
    const double h2 = direct_gain(params, f_hz, d_m);
    if (n_disturbers == 0 || d_m == 0.0)
        return 0.0;
    const double coupling = std::pow(10.0, params.kx_db / 10.0);
    const double n_factor = std::pow(n_disturbers / 49.0, 0.6);
    const double f_ratio = f_hz / params.f0_hz;
    return h2 * coupling * n_factor * (d_m / params.d0_m) * f_ratio * f_ratio;
}

} // namespace sbvsim
