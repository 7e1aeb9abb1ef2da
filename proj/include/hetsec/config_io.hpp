#pragma once

// JSON config file loading.  Fields carry their customary units in the name
// (densities per km^2, powers in dBm, ratios in dB, the selection threshold
// in dBW) and are converted to SI on load.  Errors name the offending field.
//
// {
//   "tiers": [{"density_per_km2": 1.0, "power_dbm": 46.0}, ...],
//   "user_density_per_km2": 100.0,
//   "eavesdropper_density_per_km2": 11.0,
//   "jammer_density_per_km2": 50.0,
//   "user_power_dbm": 23.0,
//   "jammer_power_dbm": 23.0,
//   "alpha": 3.5,
//   "sic_beta_db": -90.0,
//   "noise_power_dbm": -174.0,
//   "tau_dbw": -80.0,          // optional; omit or null to disable selection
//   "region_radius_km": 5.0    // optional; simulation window
// }

#include <fstream>
#include <limits>
#include <string>

#include "json.hpp"

#include "hetsec/config.hpp"
#include "hetsec/errors.hpp"
#include "hetsec/presets.hpp"

namespace hetsec {

/// A config file bundles the network parameters with the simulation window.
struct LoadedConfig {
    NetworkConfig network;
    double region_radius_m = 5000.0;
};

namespace detail {

inline double number_field(const nlohmann::json& obj, const std::string& key,
                           const std::string& where) {
    if (!obj.contains(key))
        throw ConfigError("config: missing field '" + where + key + "'");
    const nlohmann::json& v = obj.at(key);
    if (!v.is_number())
        throw ConfigError("config: field '" + where + key + "' must be a number");
    return v.get<double>();
}

inline void reject_unknown(const nlohmann::json& obj,
                           std::initializer_list<const char*> known,
                           const std::string& where) {
    for (const auto& item : obj.items()) {
        bool ok = false;
        for (const char* k : known) ok = ok || item.key() == k;
        if (!ok)
            throw ConfigError("config: unknown field '" + where + item.key() + "'");
    }
}

}  // namespace detail

inline LoadedConfig parse_config(const nlohmann::json& root) {
    if (!root.is_object()) throw ConfigError("config: top level must be an object");
    detail::reject_unknown(root,
                           {"tiers", "user_density_per_km2",
                            "eavesdropper_density_per_km2", "jammer_density_per_km2",
                            "user_power_dbm", "jammer_power_dbm", "alpha",
                            "sic_beta_db", "noise_power_dbm", "tau_dbw",
                            "region_radius_km"},
                           "");

    LoadedConfig out;
    NetworkConfig& cfg = out.network;
    cfg.tiers.clear();

    if (!root.contains("tiers") || !root.at("tiers").is_array() ||
        root.at("tiers").empty())
        throw ConfigError("config: field 'tiers' must be a non-empty array");
    std::size_t i = 0;
    for (const nlohmann::json& tier : root.at("tiers")) {
        const std::string where = "tiers[" + std::to_string(i) + "].";
        if (!tier.is_object())
            throw ConfigError("config: field 'tiers[" + std::to_string(i) +
                              "]' must be an object");
        detail::reject_unknown(tier, {"density_per_km2", "power_dbm"}, where);
        TierParams t;
        t.density = per_km2(detail::number_field(tier, "density_per_km2", where));
        t.power = from_dbm(detail::number_field(tier, "power_dbm", where));
        cfg.tiers.push_back(t);
        ++i;
    }

    cfg.user_density = per_km2(detail::number_field(root, "user_density_per_km2", ""));
    cfg.eavesdropper_density =
        per_km2(detail::number_field(root, "eavesdropper_density_per_km2", ""));
    cfg.jammer_density =
        per_km2(detail::number_field(root, "jammer_density_per_km2", ""));
    cfg.user_power = from_dbm(detail::number_field(root, "user_power_dbm", ""));
    cfg.jammer_power = from_dbm(detail::number_field(root, "jammer_power_dbm", ""));
    cfg.alpha = detail::number_field(root, "alpha", "");
    cfg.sic_beta = from_db(detail::number_field(root, "sic_beta_db", ""));
    cfg.noise_power = from_dbm(detail::number_field(root, "noise_power_dbm", ""));

    if (root.contains("tau_dbw") && !root.at("tau_dbw").is_null())
        cfg.tau = from_db(detail::number_field(root, "tau_dbw", ""));
    else
        cfg.tau = std::numeric_limits<double>::infinity();

    if (root.contains("region_radius_km")) {
        out.region_radius_m =
            1000.0 * detail::number_field(root, "region_radius_km", "");
        if (!(out.region_radius_m > 0.0))
            throw ConfigError("config: field 'region_radius_km' must be > 0");
    }

    try {
        cfg.validate();
    } catch (const ConfigError& e) {
        throw ConfigError(std::string(e.what()) + " (from config file)");
    }
    return out;
}

inline LoadedConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    nlohmann::json root;
    try {
        root = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("config: '" + path + "' is not valid JSON: " + e.what());
    }
    return parse_config(root);
}

}  // namespace hetsec
