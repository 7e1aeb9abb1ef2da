#pragma once

#include <cmath>
#include <string>

#include "hetsec/errors.hpp"

namespace hetsec {

namespace detail {
inline void require_finite(double v, const char* name) {
    if (!std::isfinite(v))
        throw ConfigError(std::string(name) + ": value must be finite");
}
}  // namespace detail

/// dB ratio -> linear ratio.
inline double db_to_linear(double db) {
    detail::require_finite(db, "db_to_linear");
    return std::pow(10.0, db / 10.0);
}

/// Linear ratio -> dB.  Requires a strictly positive input.
inline double linear_to_db(double v) {
    detail::require_finite(v, "linear_to_db");
    if (v <= 0.0) throw ConfigError("linear_to_db: value must be > 0");
    return 10.0 * std::log10(v);
}

/// Power in dBm -> watts.
inline double dbm_to_watts(double dbm) {
    detail::require_finite(dbm, "dbm_to_watts");
    return std::pow(10.0, (dbm - 30.0) / 10.0);
}

/// Power in watts -> dBm.  Requires a strictly positive input.
inline double watts_to_dbm(double w) {
    detail::require_finite(w, "watts_to_dbm");
    if (w <= 0.0) throw ConfigError("watts_to_dbm: power must be > 0");
    return 10.0 * std::log10(w) + 30.0;
}

/// Power in dBW -> watts.
inline double dbw_to_watts(double dbw) {
    detail::require_finite(dbw, "dbw_to_watts");
    return std::pow(10.0, dbw / 10.0);
}

/// Power in watts -> dBW.  Requires a strictly positive input.
inline double watts_to_dbw(double w) {
    detail::require_finite(w, "watts_to_dbw");
    if (w <= 0.0) throw ConfigError("watts_to_dbw: power must be > 0");
    return 10.0 * std::log10(w);
}

/// Density in points per km^2 -> points per m^2.
inline double per_km2_to_per_m2(double d) {
    detail::require_finite(d, "per_km2_to_per_m2");
    return d * 1e-6;
}

/// Radius of the guard disc a jammer-selection threshold tau induces around
/// each scheduled user: a jammer inside distance (P_J/tau)^(1/alpha) would be
/// received above tau and is therefore deactivated.  tau = +infinity means no
/// selection and yields radius 0.
inline double guard_radius(double tau, double jammer_power, double alpha) {
    if (std::isnan(tau) || tau <= 0.0)
        throw ConfigError("guard_radius: tau must be > 0");
    if (!std::isfinite(jammer_power) || jammer_power <= 0.0)
        throw ConfigError("guard_radius: jammer power must be > 0 and finite");
    if (!std::isfinite(alpha) || alpha <= 2.0)
        throw ConfigError("guard_radius: alpha must be > 2");
    if (std::isinf(tau)) return 0.0;
    return std::pow(jammer_power / tau, 1.0 / alpha);
}

}  // namespace hetsec
