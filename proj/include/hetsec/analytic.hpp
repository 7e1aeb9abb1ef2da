#pragma once

// Analytical performance model of a K-tier downlink network with full-duplex
// users and threshold-selected cooperative jammers.
//
// Interference at the typical user combines three fields: other-tier/same-tier
// base stations, scheduled full-duplex users (modelled as an inhomogeneous
// PPP whose intensity accounts for the TDMA schedule and the serving-BS
// exclusion), and active jammers (a Poisson hole process bounded below by
// keeping only the typical user's own guard disc plus the nearest scheduled
// user's disc).  Eavesdroppers see the same fields without the serving-link
// conditioning; their jammer field keeps the hole of the nearest scheduled
// user, which upper-bounds the secrecy probability.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hetsec/config.hpp"
#include "hetsec/errors.hpp"
#include "hetsec/quadrature.hpp"
#include "hetsec/specfun.hpp"

namespace hetsec {

/// Precomputed per-configuration quantities shared by the analytic
/// operations.  Cheap to copy; the optimizer clones it to vary tau.
class AnalyticContext {
public:
    explicit AnalyticContext(NetworkConfig cfg, QuadratureSettings quad = {},
                             bool homogeneous_users = false)
        : cfg_(std::move(cfg)), quad_(quad), homogeneous_users_(homogeneous_users) {
        cfg_.validate();
        const double e = 2.0 / cfg_.alpha;
        weights_.reserve(cfg_.tiers.size());
        for (const TierParams& t : cfg_.tiers) {
            weights_.push_back(std::pow(t.power, e));
            xi_ += t.density * weights_.back();
            lambda_sum_ += t.density;
        }
        sinc_ = sinc_norm(e);
        const double doubled = 2.0 * cfg_.alpha;
        const long near = std::lround(doubled);
        if (std::abs(doubled - static_cast<double>(near)) < 1e-12 && near >= 5 &&
            near <= 16)
            twice_alpha_ = static_cast<int>(near);
    }

    const NetworkConfig& cfg() const { return cfg_; }
    const QuadratureSettings& quad() const { return quad_; }
    bool homogeneous_users() const { return homogeneous_users_; }

    /// Xi = sum_t lambda_t P_t^{2/alpha}.
    double xi() const { return xi_; }
    /// Total BS density; equals the density of scheduled users far from the
    /// typical user, and the homogeneous scheduled-user density the
    /// eavesdropper model uses.
    double lambda_sum() const { return lambda_sum_; }
    /// sinc(2/alpha), normalized.
    double sinc_2_alpha() const { return sinc_; }
    /// P_t^{2/alpha} for tier t.
    double tier_weight(int t) const { return weights_[static_cast<std::size_t>(t)]; }

    /// x^alpha for x >= 0.  Quadrature kernels evaluate this millions of
    /// times; half-integer exponents (alpha = 3.5 is the usual urban fit)
    /// take the multiply/sqrt route instead of std::pow.
    double pathloss(double x) const {
        if (twice_alpha_ == 0) return std::pow(x, cfg_.alpha);
        double out = (twice_alpha_ & 1) ? std::sqrt(x) : 1.0;
        for (int i = twice_alpha_ / 2; i > 0; --i) out *= x;
        return out;
    }

    int tier_count() const { return static_cast<int>(cfg_.tiers.size()); }
    void check_tier(int k) const {
        if (k < 0 || k >= tier_count())
            throw std::invalid_argument("tier index " + std::to_string(k) +
                                        " out of range [0, " +
                                        std::to_string(tier_count()) + ")");
    }

    /// Copy of this context with a different selection threshold.
    AnalyticContext with_tau(double tau) const {
        AnalyticContext out = *this;
        out.cfg_.tau = tau;
        out.cfg_.validate();
        return out;
    }

private:
    NetworkConfig cfg_;
    QuadratureSettings quad_;
    bool homogeneous_users_ = false;
    std::vector<double> weights_;
    double xi_ = 0.0;
    double lambda_sum_ = 0.0;
    double sinc_ = 0.0;
    int twice_alpha_ = 0;
};

namespace detail {

inline void require_nonneg(double v, const char* name) {
    if (!(v >= 0.0) || !std::isfinite(v))
        throw std::invalid_argument(std::string(name) + " must be finite and >= 0");
}

inline void require_pos(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v))
        throw std::invalid_argument(std::string(name) + " must be finite and > 0");
}

// Angular half-width of the chord a disc of radius R centred at distance v
// cuts out of the circle of radius y (law of cosines).  The argument can
// leave [-1, 1] only by roundoff; anything further is a geometry bug.
inline double hole_angle(double y, double v, double R) {
    const double carg = (y * y + v * v - R * R) / (2.0 * y * v);
    if (carg > 1.0 + 1e-12 || carg < -1.0 - 1e-12)
        throw GeometryError("hole_angle: cosine argument " + std::to_string(carg) +
                            " outside [-1, 1]");
    return std::acos(std::min(1.0, std::max(-1.0, carg)));
}

// integral over y in [lo, hi] of 2 y lambda_J acos(...) / (1 + y^alpha/(s P_J)) dy:
// jammer mass inside the guard disc of a scheduled user at distance v,
// weighted by the Laplace kernel.  Shared by the typical-user and
// eavesdropper hole corrections.
inline double hole_mass(const AnalyticContext& ctx, double v, double s, double R,
                        double lo, double hi) {
    if (hi <= lo) return 0.0;
    const double lj = ctx.cfg().jammer_density;
    const double spj = s * ctx.cfg().jammer_power;
    return integrate_finite(
        [&](double y) {
            const double kernel = 1.0 / (1.0 + ctx.pathloss(y) / spj);
            return 2.0 * y * lj * hole_angle(y, v, R) * kernel;
        },
        lo, hi, ctx.quad());
}

}  // namespace detail

/// Probability that a user associates with tier k under the max biased-power
/// rule: A_k = lambda_k P_k^{2/alpha} / Xi.
inline double association_probability(const AnalyticContext& ctx, int k) {
    ctx.check_tier(k);
    return ctx.cfg().tiers[static_cast<std::size_t>(k)].density * ctx.tier_weight(k) /
           ctx.xi();
}

/// PDF of the serving distance given association with tier k:
/// f(r) = (2 pi Xi r / P_k^{2/alpha}) exp(-pi r^2 Xi / P_k^{2/alpha}).
inline double serving_distance_pdf(const AnalyticContext& ctx, int k, double r) {
    ctx.check_tier(k);
    detail::require_nonneg(r, "serving distance r");
    const double a = ctx.xi() / ctx.tier_weight(k);
    return 2.0 * M_PI * a * r * std::exp(-M_PI * a * r * r);
}

/// Laplace transform of the aggregate BS interference at the typical user
/// served by tier k at distance r.  Every non-serving BS of tier t lies
/// beyond Delta_{k,t} = r (P_t/P_k)^{1/alpha}; the per-tier exponents share
/// one hypergeometric factor because s P_t / Delta_{k,t}^alpha = s P_k / r^alpha.
inline double laplace_bs(const AnalyticContext& ctx, int k, double r, double s) {
    ctx.check_tier(k);
    detail::require_pos(r, "serving distance r");
    detail::require_nonneg(s, "Laplace argument s");
    if (s == 0.0) return 1.0;

    const double alpha = ctx.cfg().alpha;
    const double pk = ctx.cfg().tiers[static_cast<std::size_t>(k)].power;
    const double z = -s * pk / std::pow(r, alpha);
    const double f = gauss_2f1(1.0, 1.0 - 2.0 / alpha, 2.0 - 2.0 / alpha, z);
    const double exponent = 2.0 * M_PI * s * std::pow(r, 2.0 - alpha) *
                            std::pow(pk, 1.0 - 2.0 / alpha) * ctx.xi() * f /
                            (alpha - 2.0);
    return std::exp(-exponent);
}

/// Intensity of scheduled interfering users of tier t at distance y from the
/// typical user served by tier k at distance r.  Thinned by the probability
/// that a BS of tier t other than the serving one is the scheduler:
/// lambda_t (1 - exp(-pi (r+y)^2 lambda_t (P_t/P_k)^{2/alpha})).
inline double scheduled_user_intensity(const AnalyticContext& ctx, int k, double r,
                                       double y, int t) {
    ctx.check_tier(k);
    ctx.check_tier(t);
    detail::require_nonneg(r, "serving distance r");
    detail::require_nonneg(y, "distance y");
    const double lt = ctx.cfg().tiers[static_cast<std::size_t>(t)].density;
    if (lt == 0.0) return 0.0;
    const double c = lt * ctx.tier_weight(t) / ctx.tier_weight(k);
    const double d = r + y;
    return lt * (-std::expm1(-M_PI * d * d * c));
}

/// Simplified (homogeneous, full-plane) Laplace transform of the scheduled
/// full-duplex users' interference: exp(-pi P_U^{2/alpha} sum(lambda_t)
/// s^{2/alpha} / sinc(2/alpha)).
inline double laplace_users_simplified(const AnalyticContext& ctx, double s) {
    detail::require_nonneg(s, "Laplace argument s");
    if (s == 0.0 || ctx.cfg().user_power == 0.0) return 1.0;
    const double e = 2.0 / ctx.cfg().alpha;
    const double exponent = M_PI * std::pow(ctx.cfg().user_power, e) * ctx.lambda_sum() *
                            std::pow(s, e) / ctx.sinc_2_alpha();
    return std::exp(-exponent);
}

/// Laplace transform of the scheduled users' artificial-noise interference at
/// the typical user, under the inhomogeneous scheduled-user intensity (or the
/// homogeneous simplification when the context says so).
inline double laplace_scheduled_users(const AnalyticContext& ctx, int k, double r,
                                      double s) {
    ctx.check_tier(k);
    detail::require_nonneg(r, "serving distance r");
    detail::require_nonneg(s, "Laplace argument s");
    if (s == 0.0 || ctx.cfg().user_power == 0.0) return 1.0;
    if (ctx.homogeneous_users()) return laplace_users_simplified(ctx, s);

    const double alpha = ctx.cfg().alpha;
    const double spu = s * ctx.cfg().user_power;
    const double ystar = std::pow(spu, 1.0 / alpha);
    double exponent = 0.0;
    for (int t = 0; t < ctx.tier_count(); ++t) {
        const double lt = ctx.cfg().tiers[static_cast<std::size_t>(t)].density;
        if (lt == 0.0) continue;
        const double c = lt * ctx.tier_weight(t) / ctx.tier_weight(k);
        const double hint = ystar + 1.0 / std::sqrt(M_PI * c);
        exponent += 2.0 * M_PI *
                    integrate(
                        [&](double y) {
                            return scheduled_user_intensity(ctx, k, r, y, t) * y /
                                   (1.0 + ctx.pathloss(y) / spu);
                        },
                        0.0, std::numeric_limits<double>::infinity(), ctx.quad(), hint);
    }
    return std::exp(-exponent);
}

/// integral over y in [0, v] of the total scheduled-user intensity times y;
/// closed form via erf (one exponential/erf pair per tier).
inline double cumulative_intensity(const AnalyticContext& ctx, int k, double r,
                                   double v) {
    ctx.check_tier(k);
    detail::require_nonneg(r, "serving distance r");
    detail::require_nonneg(v, "distance v");
    if (v == 0.0) return 0.0;
    double total = 0.0;
    for (int t = 0; t < ctx.tier_count(); ++t) {
        const double lt = ctx.cfg().tiers[static_cast<std::size_t>(t)].density;
        if (lt == 0.0) continue;
        const double c = lt * ctx.tier_weight(t) / ctx.tier_weight(k);
        const double sc = std::sqrt(M_PI * c);
        const double decay = (std::expm1(-M_PI * c * r * r) -
                              std::expm1(-M_PI * c * (r + v) * (r + v))) /
                             (2.0 * M_PI * c);
        const double edge = r * (hetsec::erf(sc * (r + v)) - hetsec::erf(sc * r)) /
                            (2.0 * std::sqrt(c));
        total += lt * (0.5 * v * v - decay + edge);
    }
    return total;
}

/// PDF of the distance from the typical user to the nearest scheduled
/// interfering user (the nearest jammer-free hole centre):
/// f(v) = 2 pi lambda^s(r, v) v exp(-2 pi integral_0^v lambda^s(r, y) y dy).
inline double nearest_hole_pdf(const AnalyticContext& ctx, int k, double r, double v) {
    ctx.check_tier(k);
    detail::require_nonneg(r, "serving distance r");
    detail::require_nonneg(v, "distance v");
    double intensity = 0.0;
    for (int t = 0; t < ctx.tier_count(); ++t)
        intensity += scheduled_user_intensity(ctx, k, r, v, t);
    return 2.0 * M_PI * intensity * v *
           std::exp(-2.0 * M_PI * cumulative_intensity(ctx, k, r, v));
}

/// Simplified full-plane Laplace transform of the jammer interference with no
/// selection: exp(-pi lambda_J P_J^{2/alpha} s^{2/alpha} / sinc(2/alpha)).
inline double laplace_jammers_simplified(const AnalyticContext& ctx, double s) {
    detail::require_nonneg(s, "Laplace argument s");
    if (s == 0.0 || ctx.cfg().jammer_density == 0.0) return 1.0;
    const double e = 2.0 / ctx.cfg().alpha;
    const double exponent = M_PI * ctx.cfg().jammer_density *
                            std::pow(ctx.cfg().jammer_power, e) * std::pow(s, e) /
                            ctx.sinc_2_alpha();
    return std::exp(-exponent);
}

/// Lower-bound Laplace transform of the active-jammer interference at the
/// typical user: jammers outside the typical user's own guard disc, corrected
/// by the guard disc of the nearest scheduled user at random distance v.
inline double laplace_jammers_typical(const AnalyticContext& ctx, int k, double r,
                                      double s) {
    ctx.check_tier(k);
    detail::require_pos(r, "serving distance r");
    detail::require_nonneg(s, "Laplace argument s");
    const NetworkConfig& cfg = ctx.cfg();
    if (s == 0.0 || cfg.jammer_density == 0.0) return 1.0;
    const double R = cfg.guard_radius();
    if (R == 0.0) return laplace_jammers_simplified(ctx, s);

    const double alpha = cfg.alpha;
    const double spj = s * cfg.jammer_power;
    const double z = -spj / std::pow(R, alpha);
    const double f = gauss_2f1(1.0, 1.0 - 2.0 / alpha, 2.0 - 2.0 / alpha, z);
    const double outside = std::exp(-2.0 * M_PI * cfg.jammer_density * spj *
                                    std::pow(R, 2.0 - alpha) * f / (alpha - 2.0));

    // H(v, s): reinstated kernel mass of the nearest hole, restricted to the
    // region outside the typical user's own disc -> lower limit max(v-R, R).
    const auto correction = [&](double v) {
        const double h =
            v <= 0.0 ? 1.0
                     : std::exp(detail::hole_mass(ctx, v, s, R, std::max(v - R, R), v + R));
        return h * nearest_hole_pdf(ctx, k, r, v);
    };
    const double vhint = 1.0 / std::sqrt(M_PI * ctx.lambda_sum());
    // The lower integration limit switches branch at v = 2R; split there.
    const double head = integrate_finite(correction, 0.0, 2.0 * R, ctx.quad());
    const double tail = integrate(correction, 2.0 * R,
                                  std::numeric_limits<double>::infinity(), ctx.quad(),
                                  vhint);
    return outside * (head + tail);
}

namespace detail {

// Threshold scale zeta_k(r) = theta r^alpha / P_k: the Laplace argument at
// which an SINR threshold theta is met at distance r from a tier-k BS.
inline double threshold_scale(const AnalyticContext& ctx, int k, double r,
                              double theta) {
    return theta * ctx.pathloss(r) /
           ctx.cfg().tiers[static_cast<std::size_t>(k)].power;
}

}  // namespace detail

/// Connection probability conditioned on association with tier k.
inline double connection_probability_given_tier(const AnalyticContext& ctx, int k,
                                                double theta_c) {
    ctx.check_tier(k);
    detail::require_nonneg(theta_c, "theta_c");
    if (theta_c == 0.0) return 1.0;  // SINR is positive almost surely
    const double noise = ctx.cfg().self_interference() + ctx.cfg().noise_power;
    const double rhint = std::sqrt(ctx.tier_weight(k) / (M_PI * ctx.xi()));
    return integrate(
        [&](double r) {
            const double s = detail::threshold_scale(ctx, k, r, theta_c);
            return std::exp(-noise * s) * laplace_bs(ctx, k, r, s) *
                   laplace_scheduled_users(ctx, k, r, s) *
                   laplace_jammers_typical(ctx, k, r, s) *
                   serving_distance_pdf(ctx, k, r);
        },
        0.0, std::numeric_limits<double>::infinity(), ctx.quad(), rhint);
}

/// Connection probability of the typical user (lower bound): the tier mixture
/// of the conditional probabilities weighted by association probability.
inline double connection_probability(const AnalyticContext& ctx, double theta_c) {
    double total = 0.0;
    for (int k = 0; k < ctx.tier_count(); ++k) {
        const double ak = association_probability(ctx, k);
        if (ak == 0.0) continue;
        total += ak * connection_probability_given_tier(ctx, k, theta_c);
    }
    return total;
}

/// Tier-independent simplified connection probability (no jammer selection,
/// homogeneous users, zero noise), evaluated in the substituted variable
/// v = r^2 / P_k^{2/alpha}, in which the tier index drops out exactly.
inline double connection_probability_simplified(const AnalyticContext& ctx,
                                                double theta_c) {
    detail::require_nonneg(theta_c, "theta_c");
    if (theta_c == 0.0) return 1.0;
    const NetworkConfig& cfg = ctx.cfg();
    const double alpha = cfg.alpha;
    const double e = 2.0 / alpha;
    const double f = gauss_2f1(1.0, 1.0 - e, 2.0 - e, -theta_c);
    const double c = 2.0 * M_PI * theta_c * ctx.xi() * f / (alpha - 2.0) +
                     M_PI * std::pow(theta_c * cfg.user_power, e) * ctx.lambda_sum() /
                         ctx.sinc_2_alpha() +
                     M_PI * std::pow(theta_c * cfg.jammer_power, e) *
                         cfg.jammer_density / ctx.sinc_2_alpha() +
                     M_PI * ctx.xi();
    return M_PI * ctx.xi() *
           integrate([&](double v) { return std::exp(-c * v); }, 0.0,
                     std::numeric_limits<double>::infinity(), ctx.quad(), 1.0 / c);
}

/// Per-tier variant of the simplified connection probability.  The integrand
/// is identical for every tier (the substitution removes k), so this only
/// validates the index and evaluates the same integral.
inline double connection_probability_simplified_for_tier(const AnalyticContext& ctx,
                                                         int k, double theta_c) {
    ctx.check_tier(k);
    return connection_probability_simplified(ctx, theta_c);
}

/// Laplace transform of the all-BS interference at an eavesdropper (no
/// serving-link exclusion): exp(-pi s^{2/alpha} Xi / sinc(2/alpha)).
inline double laplace_bs_eavesdropper(const AnalyticContext& ctx, double s) {
    detail::require_nonneg(s, "Laplace argument s");
    if (s == 0.0) return 1.0;
    const double e = 2.0 / ctx.cfg().alpha;
    return std::exp(-M_PI * std::pow(s, e) * ctx.xi() / ctx.sinc_2_alpha());
}

/// Laplace transform of the scheduled users' artificial noise at an
/// eavesdropper; the scheduled users form (approximately) a homogeneous PPP
/// of density sum(lambda_t).
inline double laplace_users_eavesdropper(const AnalyticContext& ctx, double s) {
    return laplace_users_simplified(ctx, s);
}

/// Upper-bound Laplace transform of the active-jammer interference at an
/// eavesdropper: full-plane jammers thinned only by the guard disc of the
/// eavesdropper's nearest scheduled user at random distance v.
/// G(v, s) reinstates that disc's kernel mass; for v <= R the part of the
/// disc closer than R - v surrounds the eavesdropper completely and has the
/// closed hypergeometric form.
inline double laplace_jammers_eavesdropper(const AnalyticContext& ctx, double s) {
    detail::require_nonneg(s, "Laplace argument s");
    const NetworkConfig& cfg = ctx.cfg();
    if (s == 0.0 || cfg.jammer_density == 0.0) return 1.0;
    const double plain = laplace_jammers_simplified(ctx, s);
    const double R = cfg.guard_radius();
    if (R == 0.0) return plain;

    const double alpha = cfg.alpha;
    const double e = 2.0 / alpha;
    const double spj = s * cfg.jammer_power;
    const double lu = ctx.lambda_sum();

    const auto big_g = [&](double v) {
        if (v >= R)
            return std::exp(detail::hole_mass(ctx, v, s, R, v - R, v + R));
        const double d = R - v;
        const double disc = M_PI * cfg.jammer_density * d * d *
                            gauss_2f1(1.0, e, 1.0 + e, -ctx.pathloss(d) / spj);
        return std::exp(disc + detail::hole_mass(ctx, v, s, R, d, R + v));
    };
    const auto integrand = [&](double v) {
        return big_g(v) * 2.0 * M_PI * lu * v * std::exp(-M_PI * lu * v * v);
    };
    const double vhint = 1.0 / std::sqrt(M_PI * lu);
    // Branch switch at v = R; split there.
    const double head = integrate_finite(integrand, 0.0, R, ctx.quad());
    const double tail = integrate(integrand, R, std::numeric_limits<double>::infinity(),
                                  ctx.quad(), vhint);
    return plain * (head + tail);
}

namespace detail {

// Tier-independent core of the secrecy integral.  Substituting
// u = r / P_k^{1/alpha} turns the per-tier eavesdropper integral into
// P_k^{2/alpha} * J(theta_s) with
// J = integral over u of exp(-N_0 theta_s u^alpha) L'_B L'_U L'_J u du,
// all transforms evaluated at s = theta_s u^alpha.
inline double secrecy_core_integral(const AnalyticContext& ctx, double theta_s) {
    const double alpha = ctx.cfg().alpha;
    const double e = 2.0 / alpha;
    const double n0 = ctx.cfg().noise_power;
    const double uhint =
        std::sqrt(ctx.sinc_2_alpha() / (M_PI * ctx.xi() * std::pow(theta_s, e)));
    return integrate(
        [&](double u) {
            const double s = theta_s * ctx.pathloss(u);
            return std::exp(-n0 * s) * laplace_bs_eavesdropper(ctx, s) *
                   laplace_users_eavesdropper(ctx, s) *
                   laplace_jammers_eavesdropper(ctx, s) * u;
        },
        0.0, std::numeric_limits<double>::infinity(), ctx.quad(), uhint);
}

}  // namespace detail

/// Secrecy probability against the most vulnerable eavesdropper, conditioned
/// on the typical user being served by tier k (upper bound).
inline double secrecy_probability_given_tier(const AnalyticContext& ctx, int k,
                                             double theta_s) {
    ctx.check_tier(k);
    detail::require_pos(theta_s, "theta_s");
    if (ctx.cfg().eavesdropper_density == 0.0) return 1.0;
    const double core = detail::secrecy_core_integral(ctx, theta_s);
    return std::exp(-2.0 * M_PI * ctx.cfg().eavesdropper_density * ctx.tier_weight(k) *
                    core);
}

/// Secrecy probability of the typical link (upper bound): tier mixture of the
/// conditional secrecy probabilities.
inline double secrecy_probability(const AnalyticContext& ctx, double theta_s) {
    detail::require_pos(theta_s, "theta_s");
    if (ctx.cfg().eavesdropper_density == 0.0) return 1.0;
    const double core = detail::secrecy_core_integral(ctx, theta_s);
    double total = 0.0;
    for (int k = 0; k < ctx.tier_count(); ++k) {
        const double ak = association_probability(ctx, k);
        if (ak == 0.0) continue;
        total += ak * std::exp(-2.0 * M_PI * ctx.cfg().eavesdropper_density *
                               ctx.tier_weight(k) * core);
    }
    return total;
}

}  // namespace hetsec
