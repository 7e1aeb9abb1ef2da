#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "hetsec/simulator.hpp"
#include "hetsec/units.hpp"

using namespace hetsec;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

NetworkConfig baseline() {
    NetworkConfig cfg;
    cfg.tiers = {{per_km2_to_per_m2(1.0), dbm_to_watts(46.0)},
                 {per_km2_to_per_m2(10.0), dbm_to_watts(30.0)}};
    cfg.user_density = per_km2_to_per_m2(100.0);
    cfg.eavesdropper_density = per_km2_to_per_m2(11.0);
    cfg.jammer_density = per_km2_to_per_m2(50.0);
    cfg.user_power = dbm_to_watts(23.0);
    cfg.jammer_power = dbm_to_watts(23.0);
    cfg.alpha = 3.5;
    cfg.sic_beta = db_to_linear(-90.0);
    cfg.noise_power = dbm_to_watts(-174.0);
    cfg.tau = dbw_to_watts(-80.0);
    return cfg;
}

// Same parameters on a 2 km window: two orders of magnitude cheaper per
// realization, still >= 50 BSs in the densest tier.
SimulationRegion small_region() { return {2000.0}; }

double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max(d, std::abs(f - static_cast<double>(i) / n));
        d = std::max(d, std::abs(f - static_cast<double>(i + 1) / n));
    }
    return d;
}

// Reference association: scan every BS in (tier, index) order and keep the
// strict minimum of d^2 / P_t^{2/alpha}.
detail::Association brute_force_associate(const Point& q, const NetworkRealization& real,
                                          const NetworkConfig& cfg) {
    detail::Association best;
    double best_metric = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < real.bs_per_tier.size(); ++t) {
        const double w = std::pow(cfg.tiers[t].power, 2.0 / cfg.alpha);
        for (std::size_t i = 0; i < real.bs_per_tier[t].size(); ++i) {
            const double d2 = dist_sq(real.bs_per_tier[t][i], q);
            const double metric = d2 / w;
            if (metric < best_metric) {
                best_metric = metric;
                best = {static_cast<int>(t), static_cast<int>(i), d2};
            }
        }
    }
    return best;
}

}  // namespace

TEST_CASE("sample_ppp count statistics and uniformity") {
    const SimulationRegion region{5000.0};
    const double density = per_km2_to_per_m2(10.0);
    std::mt19937_64 stream = make_stream(2024, 0);

    const int draws = 10000;
    double count_sum = 0.0;
    std::vector<double> radii_sq, angles;
    for (int i = 0; i < draws; ++i) {
        const auto pts = sample_ppp(density, region, stream);
        count_sum += static_cast<double>(pts.size());
        if (radii_sq.size() < 5000) {
            for (const Point& p : pts) {
                radii_sq.push_back((p.x * p.x + p.y * p.y) /
                                   (region.radius * region.radius));
                angles.push_back((std::atan2(p.y, p.x) + M_PI) / (2.0 * M_PI));
            }
        }
    }
    const double expected = density * M_PI * region.radius * region.radius;  // 785.4
    REQUIRE_THAT(expected, WithinRel(785.398163, 1e-6));
    const double sigma_of_mean = std::sqrt(expected) / std::sqrt(double(draws));
    REQUIRE(std::abs(count_sum / draws - expected) < 3.0 * sigma_of_mean);

    // r^2/R^2 and normalized angle are both U(0,1) for uniform disk points.
    const auto uniform_cdf = [](double v) { return std::min(1.0, std::max(0.0, v)); };
    const double threshold = 1.358 / std::sqrt(static_cast<double>(radii_sq.size()));
    REQUIRE(ks_statistic(radii_sq, uniform_cdf) < threshold);
    REQUIRE(ks_statistic(angles, uniform_cdf) < threshold);
}

TEST_CASE("sample_ppp trivial cases") {
    const SimulationRegion region{5000.0};
    std::mt19937_64 a = make_stream(7, 1);
    std::mt19937_64 b = make_stream(7, 1);
    const auto pa = sample_ppp(per_km2_to_per_m2(5.0), region, a);
    const auto pb = sample_ppp(per_km2_to_per_m2(5.0), region, b);
    REQUIRE(pa.size() == pb.size());
    for (std::size_t i = 0; i < pa.size(); ++i) {
        REQUIRE(pa[i].x == pb[i].x);
        REQUIRE(pa[i].y == pb[i].y);
    }

    std::mt19937_64 c = make_stream(7, 1);
    REQUIRE(sample_ppp(0.0, region, c).empty());
    // Zero density consumed no draws: c is still aligned with a fresh stream.
    std::mt19937_64 d = make_stream(7, 1);
    REQUIRE(c() == d());

    REQUIRE_THROWS_AS(sample_ppp(-1.0, region, c), ConfigError);
}

TEST_CASE("region validation") {
    NetworkConfig cfg = baseline();
    SimulationRegion region{5000.0};
    REQUIRE_NOTHROW(region.validate(cfg));
    REQUIRE_THROWS_AS(SimulationRegion{0.0}.validate(cfg), ConfigError);
    REQUIRE_THROWS_AS(SimulationRegion{300.0}.validate(cfg), ConfigError);
}

TEST_CASE("build_realization invariants against brute force") {
    const NetworkConfig cfg = baseline();
    const SimulationRegion region = small_region();
    const double guard = cfg.guard_radius();

    for (std::uint64_t idx = 0; idx < 100; ++idx) {
        std::mt19937_64 stream = make_stream(42, idx);
        const NetworkRealization real = build_realization(cfg, region, stream);

        // Serving BS maximizes biased received power from the origin.
        const auto serving = brute_force_associate({0.0, 0.0}, real, cfg);
        REQUIRE(serving.tier == real.serving_tier);
        REQUIRE(serving.index == real.serving_index);

        // Typical user leads the schedule and is tagged with the serving BS.
        REQUIRE(!real.scheduled_users.empty());
        REQUIRE(real.scheduled_users[0].pos.x == 0.0);
        REQUIRE(real.scheduled_users[0].pos.y == 0.0);
        REQUIRE(real.scheduled_users[0].tier == real.serving_tier);
        REQUIRE(real.scheduled_users[0].bs_index == real.serving_index);

        // Each BS schedules at most one user; scheduled users belong to the
        // scheduling BS per the association rule; every nonempty BS (other
        // than the serving one, occupied by the typical) schedules exactly one.
        std::set<std::pair<int, int>> seen;
        for (const ScheduledUser& u : real.scheduled_users) {
            REQUIRE(seen.emplace(u.tier, u.bs_index).second);
            if (&u != &real.scheduled_users[0]) {
                const auto a = brute_force_associate(u.pos, real, cfg);
                REQUIRE(a.tier == u.tier);
                REQUIRE(a.index == u.bs_index);
            }
        }
        std::set<std::pair<int, int>> nonempty;
        for (const Point& user : real.users) {
            const auto a = brute_force_associate(user, real, cfg);
            nonempty.emplace(a.tier, a.index);
        }
        nonempty.emplace(real.serving_tier, real.serving_index);
        REQUIRE(real.scheduled_users.size() == nonempty.size());

        // Active jammer set: exact equality with the O(n m) filter.
        std::vector<int> expected_active;
        for (std::size_t j = 0; j < real.jammers.size(); ++j) {
            bool active = true;
            for (const ScheduledUser& u : real.scheduled_users) {
                if (dist_sq(real.jammers[j], u.pos) <= guard * guard) {
                    active = false;
                    break;
                }
            }
            if (active) expected_active.push_back(static_cast<int>(j));
        }
        REQUIRE(real.active_jammers == expected_active);

        // Poisson-hole invariant: strictly outside every guard disc.
        for (int j : real.active_jammers)
            for (const ScheduledUser& u : real.scheduled_users)
                REQUIRE(dist_sq(real.jammers[static_cast<std::size_t>(j)], u.pos) >
                        guard * guard);
    }
}

TEST_CASE("boundary jammer at exactly the guard radius is inactive") {
    NetworkConfig cfg = baseline();
    const double guard = cfg.guard_radius();
    // Craft the selection input directly: one scheduled user at the origin.
    std::vector<ScheduledUser> scheduled = {{{0.0, 0.0}, 0, 0}};
    const detail::GuardIndex index(scheduled, guard);
    REQUIRE(index.has_user_within_radius({guard, 0.0}));                 // inactive
    REQUIRE_FALSE(index.has_user_within_radius({std::nextafter(guard, 1e9), 0.0}));
    REQUIRE(index.has_user_within_radius({0.0, guard * 0.999}));
}

TEST_CASE("scheduling picks uniformly among a BS's users") {
    // Small window, sparse BSs, users tuned so buckets of size 3 are common.
    NetworkConfig cfg = baseline();
    cfg.tiers = {{per_km2_to_per_m2(3.0), dbm_to_watts(30.0)}};
    cfg.user_density = per_km2_to_per_m2(9.0);
    cfg.eavesdropper_density = 0.0;
    cfg.jammer_density = per_km2_to_per_m2(1.0);
    const SimulationRegion region{1000.0};

    long rank_counts[3] = {0, 0, 0};
    for (std::uint64_t idx = 0; idx < 600; ++idx) {
        std::mt19937_64 stream = make_stream(99, idx);
        const NetworkRealization real = build_realization(cfg, region, stream);
        // Rebuild the buckets and locate each scheduled user's rank.
        std::map<std::pair<int, int>, std::vector<int>> buckets;
        for (std::size_t u = 0; u < real.users.size(); ++u) {
            const auto a = brute_force_associate(real.users[u], real, cfg);
            buckets[{a.tier, a.index}].push_back(static_cast<int>(u));
        }
        for (std::size_t si = 1; si < real.scheduled_users.size(); ++si) {
            const ScheduledUser& s = real.scheduled_users[si];
            const auto& bucket = buckets[{s.tier, s.bs_index}];
            if (bucket.size() != 3) continue;
            for (int rank = 0; rank < 3; ++rank) {
                const Point& cand = real.users[static_cast<std::size_t>(bucket[rank])];
                if (cand.x == s.pos.x && cand.y == s.pos.y) ++rank_counts[rank];
            }
        }
    }
    const long total = rank_counts[0] + rank_counts[1] + rank_counts[2];
    REQUIRE(total > 300);
    double chi2 = 0.0;
    for (long c : rank_counts) {
        const double expect = static_cast<double>(total) / 3.0;
        chi2 += (c - expect) * (c - expect) / expect;
    }
    REQUIRE(chi2 < 13.8);  // chi-square, 2 dof, p = 0.001
}

TEST_CASE("conditioned realizations respect the exclusion geometry") {
    const NetworkConfig cfg = baseline();
    const SimulationRegion region = small_region();
    const TierCondition cond{0, 200.0};
    const double pk = cfg.tiers[0].power;

    for (std::uint64_t idx = 0; idx < 50; ++idx) {
        std::mt19937_64 stream = make_stream(5, idx);
        const NetworkRealization real = build_realization(cfg, region, stream, &cond);
        REQUIRE(real.serving_tier == 0);
        REQUIRE(real.serving_index == 0);
        REQUIRE(real.bs_per_tier[0][0].x == 200.0);
        REQUIRE(real.bs_per_tier[0][0].y == 0.0);
        for (std::size_t t = 0; t < real.bs_per_tier.size(); ++t) {
            const double exclusion =
                200.0 * std::pow(cfg.tiers[t].power / pk, 1.0 / cfg.alpha);
            for (std::size_t i = t == 0 ? 1 : 0; i < real.bs_per_tier[t].size(); ++i) {
                const Point& p = real.bs_per_tier[t][i];
                REQUIRE(std::sqrt(p.x * p.x + p.y * p.y) >= exclusion);
            }
        }
        // The pinned BS therefore wins the association at the origin.
        const auto a = brute_force_associate({0.0, 0.0}, real, cfg);
        REQUIRE(a.tier == 0);
        REQUIRE(a.index == 0);
    }
}

TEST_CASE("single-link SINR distribution (no interference)") {
    // Serving BS at 100 m with unit power: mean SINR = 1e-7 / 1e-10 = 1000.
    NetworkConfig cfg;
    cfg.tiers = {{1e-6, 1.0}};
    cfg.user_power = 0.0;
    cfg.jammer_power = 1.0;
    cfg.alpha = 3.5;
    cfg.sic_beta = 0.0;
    cfg.noise_power = 1e-10;

    NetworkRealization real;
    real.bs_per_tier = {{{100.0, 0.0}}};
    real.serving_tier = 0;
    real.serving_index = 0;
    real.scheduled_users = {{{0.0, 0.0}, 0, 0}};

    std::mt19937_64 stream = make_stream(11, 0);
    std::vector<double> sinrs;
    for (int i = 0; i < 10000; ++i)
        sinrs.push_back(compute_sinrs(real, cfg, stream, 11, 0).sinr_user);
    const auto cdf = [](double x) { return 1.0 - std::exp(-x / 1000.0); };
    REQUIRE(ks_statistic(sinrs, cdf) < 1.358 / std::sqrt(10000.0));
}

TEST_CASE("two-exponential SINR distribution (one interferer)") {
    NetworkConfig cfg;
    cfg.tiers = {{1e-6, 1.0}};
    cfg.user_power = 0.0;
    cfg.jammer_power = 1.0;
    cfg.alpha = 3.5;
    cfg.sic_beta = 0.0;
    cfg.noise_power = 1e-9;

    NetworkRealization real;
    real.bs_per_tier = {{{100.0, 0.0}, {-300.0, 0.0}}};
    real.serving_tier = 0;
    real.serving_index = 0;
    real.scheduled_users = {{{0.0, 0.0}, 0, 0}};

    const double sbar = 1e-7;                      // 100^-3.5
    const double ibar = std::pow(300.0, -3.5);
    const double noise = 1e-9;
    std::mt19937_64 stream = make_stream(12, 0);
    std::vector<double> sinrs;
    for (int i = 0; i < 10000; ++i)
        sinrs.push_back(compute_sinrs(real, cfg, stream, 12, 0).sinr_user);
    const auto cdf = [&](double th) {
        return 1.0 - std::exp(-th * noise / sbar) / (1.0 + th * ibar / sbar);
    };
    REQUIRE(ks_statistic(sinrs, cdf) < 1.358 / std::sqrt(10000.0));
}

TEST_CASE("eavesdropper SINR: noise-only denominator plus typical user's noise") {
    // One eavesdropper, serving BS, and the typical user's own artificial
    // noise.  A huge self-interference coefficient would poison the result if
    // it wrongly entered the eavesdropper's denominator.
    NetworkConfig cfg;
    cfg.tiers = {{1e-6, 1.0}};
    cfg.user_power = 0.05;
    cfg.jammer_power = 1.0;
    cfg.alpha = 3.5;
    cfg.sic_beta = 1e9;
    cfg.noise_power = 1e-9;

    NetworkRealization real;
    real.bs_per_tier = {{{100.0, 0.0}}};
    real.serving_tier = 0;
    real.serving_index = 0;
    real.scheduled_users = {{{0.0, 0.0}, 0, 0}};
    real.eavesdroppers = {{200.0, 0.0}};

    const double sbar = std::pow(100.0, -3.5);     // serving BS -> eavesdropper
    const double ibar = 0.05 * std::pow(200.0, -3.5);  // typical AN -> eavesdropper
    std::mt19937_64 stream = make_stream(13, 0);
    std::vector<double> sinrs;
    for (std::uint64_t i = 0; i < 10000; ++i) {
        const SinrSample s = compute_sinrs(real, cfg, stream, 13, i);
        REQUIRE(s.eavesdropper_sinrs.size() == 1);
        sinrs.push_back(s.eavesdropper_sinrs[0]);
    }
    const auto cdf = [&](double th) {
        return 1.0 - std::exp(-th * cfg.noise_power / sbar) / (1.0 + th * ibar / sbar);
    };
    REQUIRE(ks_statistic(sinrs, cdf) < 1.358 / std::sqrt(10000.0));
}

TEST_CASE("early-exit eavesdropper maximum equals the full evaluation") {
    const NetworkConfig cfg = baseline();
    const SimulationRegion region = small_region();
    for (std::uint64_t idx = 0; idx < 50; ++idx) {
        const SinrRecord fast = detail::realize_one(cfg, region, 321, idx, true);

        std::mt19937_64 stream = make_stream(321, idx);
        const NetworkRealization real = build_realization(cfg, region, stream);
        const SinrSample full = compute_sinrs(real, cfg, stream, 321, idx);

        REQUIRE(fast.user_sinr == full.sinr_user);
        REQUIRE(fast.serving_tier == full.serving_tier);
        double expected_max = 0.0;
        for (double s : full.eavesdropper_sinrs) expected_max = std::max(expected_max, s);
        REQUIRE(fast.max_eav_sinr == expected_max);
    }
}

TEST_CASE("run_batch is bit-identical across worker counts") {
    const NetworkConfig cfg = baseline();
    const SimulationRegion region = small_region();
    const SinrBatch one = run_batch(cfg, region, 40, 555, true, 1);
    const SinrBatch four = run_batch(cfg, region, 40, 555, true, 4);
    REQUIRE(one.records.size() == four.records.size());
    for (std::size_t i = 0; i < one.records.size(); ++i) {
        REQUIRE(one.records[i].user_sinr == four.records[i].user_sinr);
        REQUIRE(one.records[i].max_eav_sinr == four.records[i].max_eav_sinr);
        REQUIRE(one.records[i].serving_tier == four.records[i].serving_tier);
    }
}

TEST_CASE("batch estimates: trivial thresholds, monotonicity, determinism") {
    const NetworkConfig cfg = baseline();
    const SimulationRegion region = small_region();
    const SinrBatch batch = run_batch(cfg, region, 300, 777, true);

    REQUIRE(batch_connection(batch, 1e-12).overall.mean >= 0.999);
    REQUIRE(batch_secrecy(batch, 1e9).overall.mean >= 0.999);

    double prev_pc = 1.0;
    double prev_ps = 0.0;
    for (double th_db : {-20.0, -10.0, 0.0, 10.0, 20.0}) {
        const double pc = batch_connection(batch, db_to_linear(th_db)).overall.mean;
        const double ps = batch_secrecy(batch, db_to_linear(th_db)).overall.mean;
        REQUIRE(pc <= prev_pc);
        REQUIRE(ps >= prev_ps);
        prev_pc = pc;
        prev_ps = ps;
    }

    // Tier breakdown partitions the overall count.
    const TierwiseEstimate est = batch_connection(batch, 1.0);
    REQUIRE(est.per_tier.size() == 2);
    REQUIRE(est.per_tier[0].n + est.per_tier[1].n == est.overall.n);

    const TierwiseEstimate again =
        batch_connection(run_batch(cfg, region, 300, 777, true), 1.0);
    REQUIRE(again.overall.mean == est.overall.mean);

    REQUIRE_THROWS_AS(estimate_connection(cfg, region, 1.0, 50, 1), ConfigError);
    REQUIRE_THROWS_AS(estimate_secrecy(cfg, region, 1.0, 99, 1), ConfigError);
}

TEST_CASE("secrecy with no eavesdroppers is exactly certain") {
    NetworkConfig cfg = baseline();
    cfg.eavesdropper_density = 0.0;
    const TierwiseEstimate est = estimate_secrecy(cfg, small_region(), 1.0, 100, 3);
    REQUIRE(est.overall.mean == 1.0);
    REQUIRE(est.overall.ci_half_width == 0.0);
}

TEST_CASE("estimate_laplace basics") {
    const NetworkConfig cfg = baseline();
    const SimulationRegion region = small_region();

    LaplaceProbe bs_probe{InterferenceSource::kBaseStations,
                          MeasurementTarget::kTypicalUser,
                          TierCondition{0, 200.0}};
    const ProbabilityEstimate at_zero = estimate_laplace(cfg, region, bs_probe, 0.0,
                                                         50, 9);
    REQUIRE(at_zero.mean == 1.0);
    REQUIRE(at_zero.ci_half_width == 0.0);

    // Strictly monotone in s realization by realization, hence in the mean.
    double prev = 1.0;
    for (double s : {1e5, 1e6, 1e7}) {
        const double v = estimate_laplace(cfg, region, bs_probe, s, 100, 9).mean;
        REQUIRE(v > 0.0);
        REQUIRE(v < prev);
        prev = v;
    }

    NetworkConfig nojam = baseline();
    nojam.jammer_density = 0.0;
    const LaplaceProbe jam_probe{InterferenceSource::kJammers,
                                 MeasurementTarget::kTypicalUser, std::nullopt};
    REQUIRE(estimate_laplace(nojam, region, jam_probe, 1e7, 50, 9).mean == 1.0);

    LaplaceProbe bad = bs_probe;
    bad.target = MeasurementTarget::kRandomEavesdropper;
    REQUIRE_THROWS_AS(estimate_laplace(cfg, region, bad, 1.0, 50, 9),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(estimate_laplace(cfg, region, bs_probe, -1.0, 50, 9),
                      std::invalid_argument);
}

TEST_CASE("edge effects: doubling the window moves P_c by less than the CIs") {
    const NetworkConfig cfg = baseline();
    const long n = 5000;
    const TierwiseEstimate base =
        estimate_connection(cfg, SimulationRegion{5000.0}, 1.0, n, 2026);
    const TierwiseEstimate wide =
        estimate_connection(cfg, SimulationRegion{10000.0}, 1.0, n, 2027);
    REQUIRE(std::abs(base.overall.mean - wide.overall.mean) <
            base.overall.ci_half_width + wide.overall.ci_half_width);
}
