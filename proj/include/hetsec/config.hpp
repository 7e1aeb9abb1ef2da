#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "hetsec/errors.hpp"
#include "hetsec/units.hpp"

namespace hetsec {

/// One base-station tier of the downlink network.  All quantities SI.
struct TierParams {
    double density = 0.0;  ///< BS density [1/m^2]
    double power = 0.0;    ///< BS transmit power [W]
};

/// Full network parameter set in SI units.  Densities are per m^2, powers in
/// watts.  tau is the jammer-selection threshold in watts; +infinity disables
/// selection (every jammer stays active, guard radius 0).
struct NetworkConfig {
    std::vector<TierParams> tiers;
    double user_density = 0.0;         ///< lambda_U [1/m^2]
    double eavesdropper_density = 0.0; ///< lambda_E [1/m^2]
    double jammer_density = 0.0;       ///< lambda_J [1/m^2]
    double user_power = 0.0;           ///< P_U, artificial-noise power of scheduled users [W]
    double jammer_power = 0.0;         ///< P_J [W]
    double alpha = 3.5;                ///< path-loss exponent, > 2
    double sic_beta = 0.0;             ///< residual self-interference fraction (linear)
    double noise_power = 0.0;          ///< N_0 [W]
    double tau = std::numeric_limits<double>::infinity();  ///< selection threshold [W]

    /// Residual self-interference power at a full-duplex receiver.
    double self_interference() const { return sic_beta * user_power; }

    /// Guard-disc radius induced by tau around every scheduled user.
    double guard_radius() const { return hetsec::guard_radius(tau, jammer_power, alpha); }

    /// Throws ConfigError describing the first violated constraint.
    void validate() const {
        if (tiers.empty())
            throw ConfigError("config: at least one tier is required");
        double density_sum = 0.0;
        for (std::size_t t = 0; t < tiers.size(); ++t) {
            const std::string tag = "config: tiers[" + std::to_string(t) + "]";
            if (!std::isfinite(tiers[t].density) || tiers[t].density < 0.0)
                throw ConfigError(tag + ".density must be finite and >= 0");
            if (!std::isfinite(tiers[t].power) || tiers[t].power <= 0.0)
                throw ConfigError(tag + ".power must be finite and > 0");
            density_sum += tiers[t].density;
        }
        if (density_sum <= 0.0)
            throw ConfigError("config: total BS density must be > 0");
        if (!std::isfinite(user_density) || user_density < 0.0)
            throw ConfigError("config: user_density must be finite and >= 0");
        if (!std::isfinite(eavesdropper_density) || eavesdropper_density < 0.0)
            throw ConfigError("config: eavesdropper_density must be finite and >= 0");
        if (!std::isfinite(jammer_density) || jammer_density < 0.0)
            throw ConfigError("config: jammer_density must be finite and >= 0");
        if (!std::isfinite(user_power) || user_power < 0.0)
            throw ConfigError("config: user_power must be finite and >= 0");
        if (!std::isfinite(jammer_power) || jammer_power <= 0.0)
            throw ConfigError("config: jammer_power must be finite and > 0");
        if (!std::isfinite(alpha) || alpha <= 2.0)
            throw ConfigError("config: alpha must be > 2");
        if (!std::isfinite(sic_beta) || sic_beta < 0.0)
            throw ConfigError("config: sic_beta must be finite and >= 0");
        if (!std::isfinite(noise_power) || noise_power < 0.0)
            throw ConfigError("config: noise_power must be finite and >= 0");
        if (std::isnan(tau) || tau <= 0.0)
            throw ConfigError("config: tau must be > 0 (use +inf to disable selection)");
    }
};

/// SINR decoding thresholds (linear, not dB).
struct Thresholds {
    double theta_c = 1.0;  ///< connection threshold of legitimate users
    double theta_s = 1.0;  ///< secrecy threshold applied to eavesdroppers
};

/// Conditioning event "served by tier `tier` at distance `distance`", used to
/// compare per-link Laplace transforms between the model and the simulator.
struct TierCondition {
    int tier = 0;
    double distance = 0.0;
};

/// Quality-of-service targets driving the threshold optimization.
struct QosRequirements {
    double target_secrecy = 0.9;  ///< P_T, required secrecy probability
    double target_rate = 1.0;     ///< R_T, required rate gap [bps/Hz]

    void validate() const {
        if (!(target_secrecy > 0.0) || !(target_secrecy < 1.0))
            throw ConfigError("qos: target_secrecy must lie in (0, 1)");
        if (!std::isfinite(target_rate) || target_rate <= 0.0)
            throw ConfigError("qos: target_rate must be > 0");
    }
};

/// Connection threshold implied by a secrecy threshold under a rate-gap
/// constraint R_T: theta_c = 2^{R_T} (1 + theta_s) - 1.
inline double connection_threshold_for(double theta_s, double target_rate) {
    return std::exp2(target_rate) * (1.0 + theta_s) - 1.0;
}

}  // namespace hetsec
