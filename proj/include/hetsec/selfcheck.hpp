#pragma once

// Runtime property suite: the model identities, numerical-kernel oracles,
// and simulator determinism contracts that must hold on any build/platform.
// The CLI `validate` command runs it and the acceptance suite requires it,
// so the checks live here rather than only in the unit tests.

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "hetsec/analytic.hpp"
#include "hetsec/optimizer.hpp"
#include "hetsec/presets.hpp"
#include "hetsec/quadrature.hpp"
#include "hetsec/simulator.hpp"
#include "hetsec/specfun.hpp"

namespace hetsec {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;  ///< worst observed deviation or the failure reason
};

namespace detail {

inline void add_check(std::vector<CheckResult>& out, const std::string& name,
                      bool passed, const std::string& detail) {
    out.push_back({name, passed, detail});
}

template <typename Fn>
void guarded_check(std::vector<CheckResult>& out, const std::string& name, Fn&& fn) {
    try {
        fn();
    } catch (const std::exception& e) {
        add_check(out, name, false, std::string("exception: ") + e.what());
    }
}

inline std::string worst(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "max deviation %.3g", v);
    return buf;
}

}  // namespace detail

/// Runs every check and reports one result per property.  `realizations`
/// controls the geometry-heavy checks (the active-jammer brute force),
/// `seed` the sampled ones.
inline std::vector<CheckResult> run_selfcheck(long realizations = 100,
                                              std::uint64_t seed = 1) {
    std::vector<CheckResult> out;
    const NetworkConfig cfg = baseline_config();
    const AnalyticContext ctx(cfg, QuadratureSettings{1e-6, 1e-14, 4000});

    detail::guarded_check(out, "association shares sum to one", [&] {
        double sum = 0.0;
        for (int k = 0; k < ctx.tier_count(); ++k)
            sum += association_probability(ctx, k);
        detail::add_check(out, "association shares sum to one",
                          std::abs(sum - 1.0) <= 1e-12, detail::worst(sum - 1.0));
    });

    detail::guarded_check(out, "serving-distance pdf normalizes", [&] {
        double worst = 0.0;
        for (int k = 0; k < ctx.tier_count(); ++k) {
            const double mass = integrate(
                [&](double r) { return serving_distance_pdf(ctx, k, r); }, 0.0,
                std::numeric_limits<double>::infinity(), ctx.quad(), 500.0);
            worst = std::max(worst, std::abs(mass - 1.0));
        }
        detail::add_check(out, "serving-distance pdf normalizes", worst <= 1e-6,
                          detail::worst(worst));
    });

    detail::guarded_check(out, "Laplace transforms are proper and monotone", [&] {
        const double r = 200.0;
        const std::vector<double> grid = {0.0, 1e4, 1e5, 1e6, 1e7};
        struct Named {
            const char* name;
            std::function<double(double)> f;
        };
        const std::vector<Named> transforms = {
            {"serving-tier", [&](double s) { return laplace_bs(ctx, 0, r, s); }},
            {"scheduled-users",
             [&](double s) { return laplace_scheduled_users(ctx, 0, r, s); }},
            {"jammers", [&](double s) { return laplace_jammers_typical(ctx, 0, r, s); }},
            {"bs-at-eavesdropper",
             [&](double s) { return laplace_bs_eavesdropper(ctx, s); }},
            {"users-at-eavesdropper",
             [&](double s) { return laplace_users_eavesdropper(ctx, s); }},
            {"jammers-at-eavesdropper",
             [&](double s) { return laplace_jammers_eavesdropper(ctx, s); }},
        };
        bool ok = true;
        std::string why = "all in (0,1], 1 at s=0, nonincreasing";
        for (const Named& t : transforms) {
            double prev = 2.0;
            for (double s : grid) {
                const double v = t.f(s);
                if (!(v > 0.0 && v <= 1.0) || (s == 0.0 && v != 1.0) ||
                    v > prev + 1e-12) {
                    ok = false;
                    why = std::string(t.name) + " violates at s = " + std::to_string(s);
                    break;
                }
                prev = v;
            }
            if (!ok) break;
        }
        detail::add_check(out, "Laplace transforms are proper and monotone", ok, why);
    });

    detail::guarded_check(out, "cumulative intensity closed form matches quadrature", [&] {
        const double r = 200.0;
        double worst = 0.0;
        for (double v : {50.0, 150.0, 400.0, 1000.0}) {
            const double closed = cumulative_intensity(ctx, 0, r, v);
            const double direct = integrate_finite(
                [&](double y) {
                    double intensity = 0.0;
                    for (int t = 0; t < ctx.tier_count(); ++t)
                        intensity += scheduled_user_intensity(ctx, 0, r, y, t);
                    return intensity * y;
                },
                0.0, v, QuadratureSettings{1e-9, 1e-16, 4000});
            worst = std::max(worst, std::abs(closed - direct) / direct);
        }
        detail::add_check(out, "cumulative intensity closed form matches quadrature",
                          worst <= 1e-6, detail::worst(worst));
    });

    detail::guarded_check(out, "hole corrections only remove interference", [&] {
        const double R = cfg.guard_radius();
        bool ok = true;
        std::string why = "hole mass >= 0 and corrected transforms >= simplified";
        for (double s : {1e5, 1e6, 1e7}) {
            for (double v : {0.25 * R, R, 4.0 * R}) {
                if (detail::hole_mass(ctx, v, s, R, std::max(v - R, R), v + R) < 0.0) {
                    ok = false;
                    why = "negative hole mass";
                }
            }
            if (laplace_jammers_typical(ctx, 0, 200.0, s) <
                    laplace_jammers_simplified(ctx, s) ||
                laplace_jammers_eavesdropper(ctx, s) <
                    laplace_jammers_simplified(ctx, s)) {
                ok = false;
                why = "corrected transform below simplified";
            }
        }
        detail::add_check(out, "hole corrections only remove interference", ok, why);
    });

    detail::guarded_check(out, "active jammer set matches brute force", [&] {
        const SimulationRegion region{2000.0};
        const double guard = cfg.guard_radius();
        bool ok = true;
        std::string why = "exact set equality";
        for (long i = 0; i < realizations && ok; ++i) {
            std::mt19937_64 stream = make_stream(seed, static_cast<std::uint64_t>(i));
            const NetworkRealization real = build_realization(cfg, region, stream);
            std::vector<int> brute;
            for (std::size_t j = 0; j < real.jammers.size(); ++j) {
                bool inactive = false;
                for (const ScheduledUser& u : real.scheduled_users)
                    inactive = inactive ||
                               dist_sq(u.pos, real.jammers[j]) <= guard * guard;
                if (!inactive) brute.push_back(static_cast<int>(j));
            }
            if (brute != real.active_jammers) {
                ok = false;
                why = "mismatch at realization " + std::to_string(i);
            }
        }
        detail::add_check(out, "active jammer set matches brute force", ok, why);
    });

    detail::guarded_check(out, "hypergeometric identities", [&] {
        const double ln2 = std::abs(gauss_2f1(1.0, 1.0, 2.0, -1.0) - std::log(2.0));
        const double pi4 = std::abs(gauss_2f1(0.5, 1.0, 1.5, -1.0) - M_PI / 4.0);
        detail::add_check(out, "hypergeometric identities",
                          ln2 <= 1e-9 && pi4 <= 1e-9,
                          detail::worst(std::max(ln2, pi4)));
    });

    detail::guarded_check(out, "secrecy threshold round trip", [&] {
        const AnalyticContext fast(cfg, QuadratureSettings{1e-4, 1e-12, 4000});
        const double theta0 = 1.0;
        const double target = secrecy_probability(fast, theta0);
        const ThresholdSolution sol = secrecy_threshold_for_target(fast, target);
        detail::add_check(out, "secrecy threshold round trip",
                          std::abs(sol.achieved_ps - target) <= 1e-4,
                          detail::worst(sol.achieved_ps - target));
    });

    detail::guarded_check(out, "batches are identical across worker counts", [&] {
        const SimulationRegion region{2000.0};
        const SinrBatch a = run_batch(cfg, region, 200, seed, false, 1);
        const SinrBatch b = run_batch(cfg, region, 200, seed, false, 3);
        bool ok = a.records.size() == b.records.size();
        for (std::size_t i = 0; ok && i < a.records.size(); ++i)
            ok = a.records[i].user_sinr == b.records[i].user_sinr &&
                 a.records[i].serving_tier == b.records[i].serving_tier;
        const SinrBatch c = run_batch(cfg, region, 100, seed, true, 1);
        const SinrBatch d = run_batch(cfg, region, 100, seed, true, 2);
        ok = ok && c.records.size() == d.records.size();
        for (std::size_t i = 0; ok && i < c.records.size(); ++i)
            ok = c.records[i].user_sinr == d.records[i].user_sinr &&
                 c.records[i].max_eav_sinr == d.records[i].max_eav_sinr;
        detail::add_check(out, "batches are identical across worker counts", ok,
                          ok ? "bit-identical records" : "records differ");
    });

    return out;
}

}  // namespace hetsec
