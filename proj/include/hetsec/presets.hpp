#pragma once

// Canned experiment setups: the common urban two-tier layout plus named
// parameter studies (deployment-density/selection-threshold corners, the
// per-tier breakdown, and the optimizer sweeps over jammer density, SIC
// capacity, jammer power, and eavesdropper density).  Each preset bundles a
// full parameter set with a sweep axis so a study is one command.

#include <cmath>
#include <string>
#include <vector>

#include "hetsec/config.hpp"

namespace hetsec {

inline double from_dbm(double v) { return std::pow(10.0, (v - 30.0) / 10.0); }
inline double from_db(double v) { return std::pow(10.0, v / 10.0); }
inline double to_db(double v) { return 10.0 * std::log10(v); }
inline double per_km2(double v) { return v * 1e-6; }

/// Two-tier urban macro/pico layout: 46/30 dBm, 1 and 10 BS per km^2,
/// 100 users, 11 eavesdroppers and 50 jammers per km^2, alpha 3.5, 23 dBm
/// uplink and jammer power, -90 dB SIC, -174 dBm noise, -80 dBW selection.
inline NetworkConfig baseline_config() {
    NetworkConfig cfg;
    cfg.tiers = {{per_km2(1.0), from_dbm(46.0)}, {per_km2(10.0), from_dbm(30.0)}};
    cfg.user_density = per_km2(100.0);
    cfg.eavesdropper_density = per_km2(11.0);
    cfg.jammer_density = per_km2(50.0);
    cfg.user_power = from_dbm(23.0);
    cfg.jammer_power = from_dbm(23.0);
    cfg.alpha = 3.5;
    cfg.sic_beta = from_db(-90.0);
    cfg.noise_power = from_dbm(-174.0);
    cfg.tau = from_db(-80.0);
    return cfg;
}

/// One sweep axis.  `theta` moves both decoding thresholds together (the
/// bound-comparison studies plot connection and secrecy probability against
/// one threshold axis); the other variables patch a single config field.
struct SweepSpec {
    std::string variable;  ///< theta | theta_c | theta_s | lambda_J | P_J_dbm |
                           ///< lambda_E | beta_db | tau_dbw
    double start = 0.0;    ///< dB for thresholds/beta/tau/power, per km^2 for densities
    double stop = 0.0;
    double step = 1.0;
};

struct Preset {
    std::string name;
    std::string summary;
    NetworkConfig config;
    SweepSpec sweep;
    bool optimize = false;  ///< run the threshold optimizer at each point
    bool per_tier = false;  ///< fill the per-tier probability columns
    long default_n = 0;     ///< simulated realizations per point (0 = analytic only)
};

namespace detail {

inline NetworkConfig corner_config(double lambda1_km2, double lambda2_km2,
                                   double tau_dbw) {
    NetworkConfig cfg = baseline_config();
    cfg.tiers[0].density = per_km2(lambda1_km2);
    cfg.tiers[1].density = per_km2(lambda2_km2);
    cfg.tau = from_db(tau_dbw);
    return cfg;
}

}  // namespace detail

inline const std::vector<Preset>& presets() {
    static const std::vector<Preset> table = [] {
        std::vector<Preset> p;
        // Bound-tightness corners: low/high deployment density crossed with
        // strict (-77 dBW -> 100 m) and loose (-88 dBW -> 206 m) selection.
        p.push_back({"fig3-ld-sh",
                     "low BS density, small holes: bounds vs simulation over theta",
                     detail::corner_config(1.0, 2.0, -77.0),
                     {"theta", -20.0, 20.0, 10.0},
                     false, false, 5000});
        p.push_back({"fig3-hd-sh",
                     "high BS density, small holes: bounds vs simulation over theta",
                     detail::corner_config(2.0, 10.0, -77.0),
                     {"theta", -20.0, 20.0, 10.0},
                     false, false, 5000});
        p.push_back({"fig3-ld-lh",
                     "low BS density, large holes: bounds vs simulation over theta",
                     detail::corner_config(1.0, 2.0, -88.0),
                     {"theta", -20.0, 20.0, 10.0},
                     false, false, 5000});
        p.push_back({"fig3-hd-lh",
                     "high BS density, large holes: bounds vs simulation over theta",
                     detail::corner_config(2.0, 10.0, -88.0),
                     {"theta", -20.0, 20.0, 10.0},
                     false, false, 5000});
        // Per-tier breakdown on the baseline layout.
        p.push_back({"fig5",
                     "per-tier connection/secrecy probabilities over theta",
                     baseline_config(),
                     {"theta", -20.0, 20.0, 5.0},
                     false, true, 5000});
        // Optimized operating point as one parameter varies.
        p.push_back({"fig6",
                     "optimized connection probability vs jammer density",
                     baseline_config(),
                     {"lambda_J", 10.0, 100.0, 10.0},
                     true, false, 0});
        p.push_back({"fig7",
                     "optimized connection probability vs SIC capacity",
                     baseline_config(),
                     {"beta_db", -110.0, -60.0, 10.0},
                     true, false, 0});
        p.push_back({"fig8",
                     "optimized connection probability vs jammer transmit power",
                     baseline_config(),
                     {"P_J_dbm", 13.0, 43.0, 5.0},
                     true, false, 0});
        p.push_back({"fig9",
                     "optimized connection probability vs eavesdropper density",
                     baseline_config(),
                     {"lambda_E", 1.0, 21.0, 4.0},
                     true, false, 0});
        return p;
    }();
    return table;
}

inline const Preset* find_preset(const std::string& name) {
    for (const Preset& p : presets())
        if (p.name == name) return &p;
    return nullptr;
}

/// Applies one sweep value to a config (dB axes are converted here);
/// thresholds are handled by the caller since they are not config fields.
inline void apply_sweep_value(NetworkConfig& cfg, const std::string& variable,
                              double value) {
    if (variable == "lambda_J")
        cfg.jammer_density = per_km2(value);
    else if (variable == "P_J_dbm")
        cfg.jammer_power = from_dbm(value);
    else if (variable == "lambda_E")
        cfg.eavesdropper_density = per_km2(value);
    else if (variable == "beta_db")
        cfg.sic_beta = from_db(value);
    else if (variable == "tau_dbw")
        cfg.tau = from_db(value);
    else if (variable != "theta" && variable != "theta_c" && variable != "theta_s")
        throw ConfigError("unknown sweep variable '" + variable + "'");
}

/// Expands a:b:step into the inclusive point list (half-step slack on the
/// endpoint so fractional steps land exactly).
inline std::vector<double> sweep_points(const SweepSpec& sweep) {
    if (!(sweep.step > 0.0)) throw ConfigError("sweep step must be > 0");
    if (sweep.stop < sweep.start) throw ConfigError("sweep stop must be >= start");
    std::vector<double> points;
    for (long i = 0;; ++i) {
        const double v = sweep.start + static_cast<double>(i) * sweep.step;
        if (v > sweep.stop + 0.5 * sweep.step) break;
        points.push_back(v);
    }
    return points;
}

}  // namespace hetsec
