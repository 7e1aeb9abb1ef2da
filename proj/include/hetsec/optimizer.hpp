#pragma once

// Threshold optimization: pick the jammer-selection threshold and the SINR
// threshold pair maximizing connection probability subject to a secrecy
// target.  For a fixed selection radius the secrecy constraint binds
// (secrecy probability is monotone in theta_s and the objective prefers the
// smallest feasible theta_s), so the inner step is a root find; the outer
// loop walks the selection radius greedily in fixed steps and stops at the
// first non-improvement, which an exhaustive grid search can cross-check.
//
// Objective evaluations use the analytic model through the caller's context;
// pass a context with relaxed quadrature tolerances (1e-4 is plenty next to
// the default bisection tolerance) to speed the search up.

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "hetsec/analytic.hpp"
#include "hetsec/config.hpp"
#include "hetsec/errors.hpp"

namespace hetsec {

struct OptimizerSettings {
    double step_m = 5.0;         ///< outer-loop increment of the guard radius
    double bisection_tol = 1e-4; ///< accepted |P_s - P_T|
    double theta_lo = 1e-6;      ///< lower end of the bracket search
    double bracket_max = 1e9;    ///< give up if the bracket exceeds this SINR
    int max_iterations = 60;     ///< outer-loop cap

    void validate() const {
        if (!(step_m > 0.0) || !std::isfinite(step_m))
            throw ConfigError("optimizer: step_m must be > 0");
        if (!(bisection_tol > 0.0))
            throw ConfigError("optimizer: bisection_tol must be > 0");
        if (!(theta_lo > 0.0) || !(bracket_max > theta_lo))
            throw ConfigError("optimizer: need 0 < theta_lo < bracket_max");
        if (max_iterations < 1)
            throw ConfigError("optimizer: max_iterations must be >= 1");
    }
};

/// Root of the secrecy constraint at one selection threshold.
struct ThresholdSolution {
    double theta_s = 0.0;
    double achieved_ps = 0.0;
};

struct TraceEntry {
    double r_tau = 0.0;   ///< metres; 0 = selection disabled
    double theta_s = 0.0;
    double theta_c = 0.0;
    double pc = 0.0;
};

struct OptimizationResult {
    double theta_c_star = 0.0;
    double theta_s_star = 0.0;
    double tau_star = std::numeric_limits<double>::infinity();  ///< watts
    double r_tau_star = 0.0;                                    ///< metres
    double achieved_pc = 0.0;
    double achieved_ps = 0.0;
    int iterations = 0;
    std::vector<TraceEntry> trace;  ///< every evaluated point, in order
};

/// Solves secrecy_probability(theta_s) = target for theta_s by doubling the
/// bracket up from settings.theta_lo and bisecting in log space.  If even the
/// smallest threshold over-satisfies the target, returns theta_lo (the
/// constraint is slack there and smaller thresholds only help the objective).
inline ThresholdSolution secrecy_threshold_for_target(const AnalyticContext& ctx,
                                                      double target,
                                                      const OptimizerSettings& settings = {}) {
    settings.validate();
    if (!(target > 0.0) || !(target < 1.0))
        throw ConfigError("secrecy target must lie in (0, 1)");

    double lo = settings.theta_lo;
    double ps_lo = secrecy_probability(ctx, lo);
    if (ps_lo >= target) return {lo, ps_lo};

    double hi = lo;
    double ps_hi = ps_lo;
    while (ps_hi < target) {
        if (hi >= settings.bracket_max)
            throw InfeasibleError(
                "secrecy target " + std::to_string(target) +
                    " unreachable: P_s = " + std::to_string(ps_hi) +
                    " at the bracket cap",
                ps_hi, target);
        lo = hi;
        ps_lo = ps_hi;
        hi = std::min(hi * 2.0, settings.bracket_max);
        ps_hi = secrecy_probability(ctx, hi);
    }

    double mid = hi;
    double ps_mid = ps_hi;
    while (std::abs(ps_mid - target) > settings.bisection_tol &&
           (hi - lo) > 1e-12 * hi) {
        mid = std::sqrt(lo * hi);
        ps_mid = secrecy_probability(ctx, mid);
        if (ps_mid < target)
            lo = mid;
        else
            hi = mid;
    }
    return {mid, ps_mid};
}

namespace detail {

// One outer-loop evaluation: selection radius -> threshold in watts ->
// binding secrecy threshold -> implied connection threshold -> objective.
inline TraceEntry evaluate_radius(const AnalyticContext& ctx,
                                  const QosRequirements& qos, double r_tau,
                                  const OptimizerSettings& settings) {
    const double tau = r_tau == 0.0
                           ? std::numeric_limits<double>::infinity()
                           : ctx.cfg().jammer_power / ctx.pathloss(r_tau);
    const AnalyticContext local = ctx.with_tau(tau);
    const ThresholdSolution inner =
        secrecy_threshold_for_target(local, qos.target_secrecy, settings);
    TraceEntry entry;
    entry.r_tau = r_tau;
    entry.theta_s = inner.theta_s;
    entry.theta_c = connection_threshold_for(inner.theta_s, qos.target_rate);
    entry.pc = connection_probability(local, entry.theta_c);
    return entry;
}

inline OptimizationResult result_from(const TraceEntry& best,
                                      const AnalyticContext& ctx) {
    OptimizationResult out;
    out.theta_c_star = best.theta_c;
    out.theta_s_star = best.theta_s;
    out.r_tau_star = best.r_tau;
    out.tau_star = best.r_tau == 0.0
                       ? std::numeric_limits<double>::infinity()
                       : ctx.cfg().jammer_power / ctx.pathloss(best.r_tau);
    out.achieved_pc = best.pc;
    return out;
}

}  // namespace detail

/// Greedy walk over the selection radius: start with selection disabled,
/// increase the radius by step_m while the objective strictly improves, and
/// return the last accepted point (ties within 1e-12 stop the walk).
inline OptimizationResult optimize_thresholds(const AnalyticContext& ctx,
                                              const QosRequirements& qos,
                                              const OptimizerSettings& settings = {}) {
    settings.validate();
    qos.validate();

    OptimizationResult result;
    TraceEntry best = detail::evaluate_radius(ctx, qos, 0.0, settings);
    result.trace.push_back(best);
    int outer = 1;
    while (outer < settings.max_iterations) {
        const TraceEntry candidate = detail::evaluate_radius(
            ctx, qos, static_cast<double>(outer) * settings.step_m, settings);
        result.trace.push_back(candidate);
        ++outer;
        if (!(candidate.pc > best.pc + 1e-12)) break;
        best = candidate;
    }

    const OptimizationResult shaped = detail::result_from(best, ctx);
    result.theta_c_star = shaped.theta_c_star;
    result.theta_s_star = shaped.theta_s_star;
    result.tau_star = shaped.tau_star;
    result.r_tau_star = shaped.r_tau_star;
    result.achieved_pc = shaped.achieved_pc;
    result.achieved_ps =
        secrecy_probability(ctx.with_tau(shaped.tau_star), shaped.theta_s_star);
    result.iterations = outer;
    return result;
}

/// Evaluates every radius in the grid with the same inner step and returns
/// the best (earliest on ties); the oracle the greedy walk is checked
/// against.  Radii whose secrecy target is unreachable are skipped; if all
/// are, the infeasibility is re-thrown.
inline OptimizationResult exhaustive_search(const AnalyticContext& ctx,
                                            const QosRequirements& qos,
                                            const std::vector<double>& r_tau_grid,
                                            const OptimizerSettings& settings = {}) {
    settings.validate();
    qos.validate();
    if (r_tau_grid.empty())
        throw std::invalid_argument("exhaustive_search: empty radius grid");

    OptimizationResult result;
    bool have_best = false;
    TraceEntry best;
    for (double r : r_tau_grid) {
        if (!(r >= 0.0) || !std::isfinite(r))
            throw std::invalid_argument("exhaustive_search: radii must be >= 0");
        TraceEntry entry;
        try {
            entry = detail::evaluate_radius(ctx, qos, r, settings);
        } catch (const InfeasibleError&) {
            continue;
        }
        result.trace.push_back(entry);
        if (!have_best || entry.pc > best.pc) {
            best = entry;
            have_best = true;
        }
    }
    if (!have_best)
        throw InfeasibleError("secrecy target unreachable at every grid radius", 0.0,
                              qos.target_secrecy);

    const OptimizationResult shaped = detail::result_from(best, ctx);
    result.theta_c_star = shaped.theta_c_star;
    result.theta_s_star = shaped.theta_s_star;
    result.tau_star = shaped.tau_star;
    result.r_tau_star = shaped.r_tau_star;
    result.achieved_pc = shaped.achieved_pc;
    result.achieved_ps =
        secrecy_probability(ctx.with_tau(shaped.tau_star), shaped.theta_s_star);
    result.iterations = static_cast<int>(result.trace.size());
    return result;
}

}  // namespace hetsec
