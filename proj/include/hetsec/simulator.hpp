#pragma once

// Monte Carlo ground truth for the downlink security model: samples full
// spatial realizations (BS tiers, users, eavesdroppers, jammers) on a disk,
// applies the association / scheduling / jammer-selection rules exactly, and
// estimates connection, secrecy, and Laplace-transform quantities.
//
// Determinism contract: every realization draws from a stream derived from
// (seed, realization index), and each eavesdropper's fades come from a
// further substream of (seed, index, eavesdropper index).  Results are
// therefore bit-identical for any worker count, and connection-only runs can
// skip eavesdropper work without disturbing anything else.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "hetsec/config.hpp"
#include "hetsec/errors.hpp"

namespace hetsec {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

inline double dist_sq(const Point& a, const Point& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy;
}

/// Observation window: a disk centred on the typical user.  Interference from
/// beyond the disk is truncated; with alpha > 3 the truncated power-law tail
/// is negligible at the default 5 km radius.
struct SimulationRegion {
    double radius = 5000.0;  ///< metres

    /// Rejects windows so small that edge effects would dominate: the densest
    /// tier must expect at least 50 base stations.
    void validate(const NetworkConfig& cfg) const {
        if (!std::isfinite(radius) || radius <= 0.0)
            throw ConfigError("region: radius must be finite and > 0");
        double densest = 0.0;
        for (const TierParams& t : cfg.tiers) densest = std::max(densest, t.density);
        const double expected = densest * M_PI * radius * radius;
        if (expected < 50.0)
            throw ConfigError("region: densest tier expects only " +
                              std::to_string(expected) +
                              " base stations (< 50); enlarge the region");
    }
};

/// A user picked for the current slot by one BS.  Index 0 of the scheduled
/// list is always the typical user at the origin.
struct ScheduledUser {
    Point pos;
    int tier = -1;
    int bs_index = -1;
};

/// One sampled snapshot of the network with all model rules applied.
struct NetworkRealization {
    std::vector<std::vector<Point>> bs_per_tier;
    std::vector<Point> users;  ///< potential users, excluding the typical one
    std::vector<Point> eavesdroppers;
    std::vector<Point> jammers;
    int serving_tier = -1;
    int serving_index = -1;
    std::vector<ScheduledUser> scheduled_users;  ///< [0] = typical user
    std::vector<int> active_jammers;             ///< ascending indices into jammers
};

/// SINR draw for one realization: the typical user's SINR plus every
/// eavesdropper's SINR on the typical link.
struct SinrSample {
    double sinr_user = 0.0;
    std::vector<double> eavesdropper_sinrs;
    int serving_tier = -1;
};

/// Monte Carlo estimate with a 95% normal-approximation confidence interval.
struct ProbabilityEstimate {
    double mean = 0.0;
    double ci_half_width = 0.0;
    long n = 0;
    std::uint64_t seed = 0;
};

/// Overall estimate plus the conditional estimate per serving tier.
struct TierwiseEstimate {
    ProbabilityEstimate overall;
    std::vector<ProbabilityEstimate> per_tier;
};

/// Compact per-realization record kept by batch runs; a whole threshold sweep
/// can be evaluated against one batch.
struct SinrRecord {
    double user_sinr = 0.0;
    double max_eav_sinr = 0.0;
    std::int16_t serving_tier = -1;
};

struct SinrBatch {
    std::vector<SinrRecord> records;
    int tier_count = 0;
    bool with_eavesdroppers = false;
    std::uint64_t seed = 0;
};

enum class InterferenceSource { kBaseStations, kUsers, kJammers };
enum class MeasurementTarget { kTypicalUser, kRandomEavesdropper };

/// What estimate_laplace measures: one aggregate-interference source observed
/// either at the typical user (optionally conditioned on its serving tier and
/// distance) or at a uniformly placed probe point.
struct LaplaceProbe {
    InterferenceSource source = InterferenceSource::kBaseStations;
    MeasurementTarget target = MeasurementTarget::kTypicalUser;
    std::optional<TierCondition> condition;
};

/// Stream for realization `index` under a master seed.
inline std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index),
                      static_cast<std::uint32_t>(index >> 32)};
    return std::mt19937_64(seq);
}

/// Independent fade stream for eavesdropper `e` of realization `index`.
inline std::mt19937_64 make_eavesdropper_stream(std::uint64_t seed,
                                                std::uint64_t index,
                                                std::uint64_t e) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index),
                      static_cast<std::uint32_t>(index >> 32),
                      0x45564153u,
                      static_cast<std::uint32_t>(e)};
    return std::mt19937_64(seq);
}

namespace detail {

// d^alpha from the squared distance, with a multiply/sqrt fast path whenever
// alpha/2 is a multiple of 1/4 (covers the usual 3.5 and 4).
class PathLoss {
public:
    explicit PathLoss(double alpha) : alpha_(alpha) {
        const double q = 2.0 * alpha;  // quarter-steps of the d^2 exponent
        const long n = std::lround(q);
        if (std::abs(q - static_cast<double>(n)) < 1e-12 && n >= 1 && n <= 32)
            quarters_ = static_cast<int>(n);
    }

    double from_square(double d2) const {
        if (quarters_ == 0) return std::pow(d2, 0.5 * alpha_);
        double out = 1.0;
        switch (quarters_ & 3) {
            case 1: out = std::sqrt(std::sqrt(d2)); break;
            case 2: out = std::sqrt(d2); break;
            case 3: {
                const double root = std::sqrt(d2);
                out = root * std::sqrt(root);
                break;
            }
            default: break;
        }
        for (int i = quarters_ >> 2; i > 0; --i) out *= d2;
        return out;
    }

private:
    double alpha_;
    int quarters_ = 0;
};

// Uniform bucket grid over [-extent, extent]^2 answering exact
// nearest-neighbour queries; ties resolved toward the smaller point index so
// grid and brute-force scans agree bit for bit.
class PointGrid {
public:
    PointGrid(const std::vector<Point>& points, double extent)
        : points_(&points), extent_(extent) {
        const std::size_t n = points.size();
        side_ = std::max<long>(1, std::lround(std::sqrt(static_cast<double>(n))));
        side_ = std::min<long>(side_, 512);
        cell_ = 2.0 * extent_ / static_cast<double>(side_);
        offsets_.assign(static_cast<std::size_t>(side_ * side_) + 1, 0);
        std::vector<int> cell_of(n);
        for (std::size_t i = 0; i < n; ++i) {
            cell_of[i] = cell_index(points[i]);
            ++offsets_[static_cast<std::size_t>(cell_of[i]) + 1];
        }
        for (std::size_t c = 1; c < offsets_.size(); ++c) offsets_[c] += offsets_[c - 1];
        order_.resize(n);
        std::vector<int> cursor(offsets_.begin(), offsets_.end() - 1);
        for (std::size_t i = 0; i < n; ++i)
            order_[static_cast<std::size_t>(
                cursor[static_cast<std::size_t>(cell_of[i])]++)] = static_cast<int>(i);
        // Counting sort keeps ascending point index within each cell, which
        // the tie rule relies on.
    }

    bool empty() const { return points_->empty(); }

    /// (index, squared distance) of the nearest point, or (-1, inf).
    std::pair<int, double> nearest(const Point& q) const {
        int best = -1;
        double best_d2 = std::numeric_limits<double>::infinity();
        if (points_->empty()) return {best, best_d2};
        const long qx = clamp_coord(q.x);
        const long qy = clamp_coord(q.y);
        for (long ring = 0; ring < 2 * side_; ++ring) {
            if (best >= 0) {
                const double reach = static_cast<double>(ring - 1) * cell_;
                if (reach > 0.0 && reach * reach > best_d2) break;
            }
            bool any_cell = false;
            for (long ix = qx - ring; ix <= qx + ring; ++ix) {
                if (ix < 0 || ix >= side_) continue;
                for (long iy = qy - ring; iy <= qy + ring; ++iy) {
                    if (iy < 0 || iy >= side_) continue;
                    // Only the ring boundary is new.
                    if (ring > 0 && std::abs(ix - qx) != ring && std::abs(iy - qy) != ring)
                        continue;
                    any_cell = true;
                    const std::size_t c = static_cast<std::size_t>(ix * side_ + iy);
                    for (int o = offsets_[c]; o < offsets_[c + 1]; ++o) {
                        const int i = order_[static_cast<std::size_t>(o)];
                        const double d2 =
                            dist_sq((*points_)[static_cast<std::size_t>(i)], q);
                        if (d2 < best_d2 || (d2 == best_d2 && i < best)) {
                            best_d2 = d2;
                            best = i;
                        }
                    }
                }
            }
            if (!any_cell && best >= 0) break;
        }
        return {best, best_d2};
    }

private:
    int cell_index(const Point& p) const {
        return static_cast<int>(clamp_coord(p.x) * side_ + clamp_coord(p.y));
    }
    long clamp_coord(double v) const {
        const long i = static_cast<long>(std::floor((v + extent_) / cell_));
        return std::min(side_ - 1, std::max(0L, i));
    }

    const std::vector<Point>* points_;
    double extent_;
    long side_ = 1;
    double cell_ = 0.0;
    std::vector<int> offsets_;
    std::vector<int> order_;
};

}  // namespace detail

/// Homogeneous PPP on the disk: Poisson count, uniform positions.  A zero
/// density consumes no stream draws.
inline std::vector<Point> sample_ppp(double density, const SimulationRegion& region,
                                     std::mt19937_64& stream) {
    if (!std::isfinite(density) || density < 0.0)
        throw ConfigError("sample_ppp: density must be finite and >= 0");
    std::vector<Point> out;
    if (density == 0.0) return out;
    const double mean = density * M_PI * region.radius * region.radius;
    std::poisson_distribution<long> count_dist(mean);
    const long count = count_dist(stream);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    out.reserve(static_cast<std::size_t>(count));
    for (long i = 0; i < count; ++i) {
        const double r = region.radius * std::sqrt(unif(stream));
        const double phi = 2.0 * M_PI * unif(stream);
        out.push_back({r * std::cos(phi), r * std::sin(phi)});
    }
    return out;
}

namespace detail {

// Poisson points on the annulus [inner, region.radius]; same draw pattern as
// sample_ppp (count, then (radius, angle) pairs).
inline std::vector<Point> sample_ppp_annulus(double density, double inner,
                                             const SimulationRegion& region,
                                             std::mt19937_64& stream) {
    std::vector<Point> out;
    const double outer = region.radius;
    if (density == 0.0 || inner >= outer) return out;
    const double area = M_PI * (outer * outer - inner * inner);
    std::poisson_distribution<long> count_dist(density * area);
    const long count = count_dist(stream);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    out.reserve(static_cast<std::size_t>(count));
    for (long i = 0; i < count; ++i) {
        const double r2 = inner * inner + unif(stream) * (outer * outer - inner * inner);
        const double r = std::sqrt(r2);
        const double phi = 2.0 * M_PI * unif(stream);
        out.push_back({r * std::cos(phi), r * std::sin(phi)});
    }
    return out;
}

struct Association {
    int tier = -1;
    int index = -1;
    double d2 = std::numeric_limits<double>::infinity();
};

// Strongest-average-power association: minimize d^2 / P_t^{2/alpha}.  Ties
// across tiers go to the lower tier id (within a tier the grid already
// prefers the lower index).
inline Association associate(const Point& q, const std::vector<PointGrid>& grids,
                             const std::vector<double>& tier_weight) {
    Association best;
    double best_metric = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < grids.size(); ++t) {
        if (grids[t].empty()) continue;
        const auto [i, d2] = grids[t].nearest(q);
        const double metric = d2 / tier_weight[t];
        if (metric < best_metric) {
            best_metric = metric;
            best = {static_cast<int>(t), i, d2};
        }
    }
    return best;
}

// Hash grid with cell size R over the scheduled users; a jammer is inactive
// iff some scheduled user lies within R, which can only happen in the 3x3
// cell neighbourhood.
class GuardIndex {
public:
    GuardIndex(const std::vector<ScheduledUser>& scheduled, double radius)
        : scheduled_(&scheduled), radius_(radius) {
        cells_.reserve(scheduled.size());
        for (std::size_t i = 0; i < scheduled.size(); ++i)
            cells_[key(cell(scheduled[i].pos.x), cell(scheduled[i].pos.y))].push_back(
                static_cast<int>(i));
    }

    bool has_user_within_radius(const Point& p) const {
        const double r2 = radius_ * radius_;
        const long cx = cell(p.x);
        const long cy = cell(p.y);
        for (long ix = cx - 1; ix <= cx + 1; ++ix) {
            for (long iy = cy - 1; iy <= cy + 1; ++iy) {
                const auto it = cells_.find(key(ix, iy));
                if (it == cells_.end()) continue;
                for (int i : it->second) {
                    if (dist_sq((*scheduled_)[static_cast<std::size_t>(i)].pos, p) <= r2)
                        return true;
                }
            }
        }
        return false;
    }

private:
    long cell(double v) const { return static_cast<long>(std::floor(v / radius_)); }
    static std::uint64_t key(long ix, long iy) {
        return static_cast<std::uint64_t>(ix) * 0x9E3779B97F4A7C15ull +
               static_cast<std::uint64_t>(iy) * 0xC2B2AE3D27D4EB4Full;
    }

    const std::vector<ScheduledUser>* scheduled_;
    double radius_;
    std::unordered_map<std::uint64_t, std::vector<int>> cells_;
};

}  // namespace detail

/// Samples one network snapshot and applies association, TDMA scheduling and
/// jammer selection.  With `condition`, the serving BS is pinned to
/// (distance, 0) in the given tier and all other BSs are sampled outside
/// their association-exclusion radii (Palm conditioning on the serving link).
inline NetworkRealization build_realization(const NetworkConfig& cfg,
                                            const SimulationRegion& region,
                                            std::mt19937_64& stream,
                                            const TierCondition* condition = nullptr) {
    NetworkRealization real;
    const int tiers = static_cast<int>(cfg.tiers.size());
    std::vector<double> tier_weight(static_cast<std::size_t>(tiers));
    for (int t = 0; t < tiers; ++t)
        tier_weight[static_cast<std::size_t>(t)] =
            std::pow(cfg.tiers[static_cast<std::size_t>(t)].power, 2.0 / cfg.alpha);

    real.bs_per_tier.resize(static_cast<std::size_t>(tiers));
    if (condition != nullptr) {
        const int k = condition->tier;
        if (k < 0 || k >= tiers)
            throw std::invalid_argument("condition tier out of range");
        if (!(condition->distance > 0.0) || condition->distance >= region.radius)
            throw std::invalid_argument("condition distance must be in (0, region)");
        const double pk = cfg.tiers[static_cast<std::size_t>(k)].power;
        for (int t = 0; t < tiers; ++t) {
            const double exclusion =
                condition->distance *
                std::pow(cfg.tiers[static_cast<std::size_t>(t)].power / pk,
                         1.0 / cfg.alpha);
            if (t == k) real.bs_per_tier[static_cast<std::size_t>(t)].push_back(
                {condition->distance, 0.0});
            auto extra = detail::sample_ppp_annulus(
                cfg.tiers[static_cast<std::size_t>(t)].density, exclusion, region,
                stream);
            auto& dst = real.bs_per_tier[static_cast<std::size_t>(t)];
            dst.insert(dst.end(), extra.begin(), extra.end());
        }
        real.serving_tier = k;
        real.serving_index = 0;
    } else {
        for (int t = 0; t < tiers; ++t)
            real.bs_per_tier[static_cast<std::size_t>(t)] =
                sample_ppp(cfg.tiers[static_cast<std::size_t>(t)].density, region,
                           stream);
    }

    real.users = sample_ppp(cfg.user_density, region, stream);
    real.eavesdroppers = sample_ppp(cfg.eavesdropper_density, region, stream);
    real.jammers = sample_ppp(cfg.jammer_density, region, stream);

    std::vector<detail::PointGrid> grids;
    grids.reserve(static_cast<std::size_t>(tiers));
    for (int t = 0; t < tiers; ++t)
        grids.emplace_back(real.bs_per_tier[static_cast<std::size_t>(t)], region.radius);

    if (condition == nullptr) {
        const detail::Association serving = detail::associate({0.0, 0.0}, grids,
                                                              tier_weight);
        if (serving.tier < 0)
            throw GeometryError("build_realization: no base stations in the region");
        real.serving_tier = serving.tier;
        real.serving_index = serving.index;
    }

    // Bucket users by their serving BS (ascending user index within buckets).
    std::vector<std::vector<std::vector<int>>> bucket(
        static_cast<std::size_t>(tiers));
    for (int t = 0; t < tiers; ++t)
        bucket[static_cast<std::size_t>(t)].resize(
            real.bs_per_tier[static_cast<std::size_t>(t)].size());
    for (std::size_t u = 0; u < real.users.size(); ++u) {
        const detail::Association a =
            detail::associate(real.users[u], grids, tier_weight);
        if (a.tier >= 0)
            bucket[static_cast<std::size_t>(a.tier)][static_cast<std::size_t>(a.index)]
                .push_back(static_cast<int>(u));
    }

    // The serving BS schedules the typical user; every other nonempty BS
    // schedules one associated user uniformly (no draw consumed when the
    // choice is forced).
    real.scheduled_users.push_back({{0.0, 0.0}, real.serving_tier, real.serving_index});
    for (int t = 0; t < tiers; ++t) {
        const auto& bs_users = bucket[static_cast<std::size_t>(t)];
        for (std::size_t b = 0; b < bs_users.size(); ++b) {
            if (t == real.serving_tier && static_cast<int>(b) == real.serving_index)
                continue;
            const auto& candidates = bs_users[b];
            if (candidates.empty()) continue;
            int pick = candidates.front();
            if (candidates.size() > 1) {
                std::uniform_int_distribution<int> choose(
                    0, static_cast<int>(candidates.size()) - 1);
                pick = candidates[static_cast<std::size_t>(choose(stream))];
            }
            real.scheduled_users.push_back(
                {real.users[static_cast<std::size_t>(pick)], t, static_cast<int>(b)});
        }
    }

    // Jammer selection: active iff strictly farther than the guard radius
    // from every scheduled user (received jamming power strictly below tau).
    const double guard = cfg.guard_radius();
    real.active_jammers.reserve(real.jammers.size());
    if (guard == 0.0) {
        for (std::size_t j = 0; j < real.jammers.size(); ++j)
            real.active_jammers.push_back(static_cast<int>(j));
    } else {
        const detail::GuardIndex index(real.scheduled_users, guard);
        for (std::size_t j = 0; j < real.jammers.size(); ++j)
            if (!index.has_user_within_radius(real.jammers[j]))
                real.active_jammers.push_back(static_cast<int>(j));
    }
    return real;
}

namespace detail {

// Interfering transmitters flattened for tight SINR loops: all BSs except the
// serving one, then every scheduled user (index 0 = the typical user's own
// artificial noise), then active jammers.
struct TransmitterList {
    std::vector<double> x, y, power;
    std::size_t typical_entry = 0;  // position of the typical user's AN entry

    TransmitterList(const NetworkRealization& real, const NetworkConfig& cfg) {
        std::size_t total = 0;
        for (const auto& tier : real.bs_per_tier) total += tier.size();
        total += real.scheduled_users.size() + real.active_jammers.size();
        x.reserve(total);
        y.reserve(total);
        power.reserve(total);
        for (std::size_t t = 0; t < real.bs_per_tier.size(); ++t) {
            const double pt = cfg.tiers[t].power;
            const auto& pts = real.bs_per_tier[t];
            for (std::size_t i = 0; i < pts.size(); ++i) {
                if (static_cast<int>(t) == real.serving_tier &&
                    static_cast<int>(i) == real.serving_index)
                    continue;
                x.push_back(pts[i].x);
                y.push_back(pts[i].y);
                power.push_back(pt);
            }
        }
        typical_entry = x.size();
        for (const ScheduledUser& u : real.scheduled_users) {
            x.push_back(u.pos.x);
            y.push_back(u.pos.y);
            power.push_back(cfg.user_power);
        }
        for (int j : real.active_jammers) {
            x.push_back(real.jammers[static_cast<std::size_t>(j)].x);
            y.push_back(real.jammers[static_cast<std::size_t>(j)].y);
            power.push_back(cfg.jammer_power);
        }
    }

    std::size_t size() const { return x.size(); }
};

inline double received_power(const PathLoss& pl, double power, double dx, double dy,
                             double fade) {
    return fade * power / pl.from_square(dx * dx + dy * dy);
}

// Typical user's SINR; fades drawn from `stream` in list order (serving
// first, then every entry except the user's own artificial noise).
inline double typical_sinr(const NetworkRealization& real, const NetworkConfig& cfg,
                           const TransmitterList& tx, const PathLoss& pl,
                           std::mt19937_64& stream) {
    std::exponential_distribution<double> fade(1.0);
    const Point serving =
        real.bs_per_tier[static_cast<std::size_t>(real.serving_tier)]
                        [static_cast<std::size_t>(real.serving_index)];
    const double signal = received_power(
        pl, cfg.tiers[static_cast<std::size_t>(real.serving_tier)].power, serving.x,
        serving.y, fade(stream));
    double interference = 0.0;
    for (std::size_t i = 0; i < tx.size(); ++i) {
        if (i == tx.typical_entry) continue;
        interference += received_power(pl, tx.power[i], tx.x[i], tx.y[i], fade(stream));
    }
    return signal / (interference + cfg.self_interference() + cfg.noise_power);
}

// Exact SINR of eavesdropper `e` from its private fade stream; `floor` > 0
// enables the early exit: once the partial interference already forces the
// SINR below `floor`, the remaining fades cannot change the outcome and the
// function returns 0 (a value certainly below `floor`).
inline double eavesdropper_sinr(const NetworkRealization& real,
                                const NetworkConfig& cfg, const TransmitterList& tx,
                                const PathLoss& pl, std::uint64_t seed,
                                std::uint64_t index, std::size_t e, double floor) {
    std::mt19937_64 stream = make_eavesdropper_stream(seed, index, e);
    std::exponential_distribution<double> fade(1.0);
    const Point& pos = real.eavesdroppers[e];
    const Point serving =
        real.bs_per_tier[static_cast<std::size_t>(real.serving_tier)]
                        [static_cast<std::size_t>(real.serving_index)];
    const double signal = received_power(
        pl, cfg.tiers[static_cast<std::size_t>(real.serving_tier)].power,
        serving.x - pos.x, serving.y - pos.y, fade(stream));
    const double budget = floor > 0.0 ? signal / floor :
                          std::numeric_limits<double>::infinity();
    double interference = cfg.noise_power;
    for (std::size_t i = 0; i < tx.size(); ++i) {
        interference +=
            received_power(pl, tx.power[i], tx.x[i] - pos.x, tx.y[i] - pos.y,
                           fade(stream));
        if (interference >= budget) return 0.0;
    }
    return signal / interference;
}

}  // namespace detail

/// Draws fades and evaluates the typical user's SINR and every eavesdropper's
/// SINR on the typical link.  `stream` continues the realization's stream;
/// (seed, index) locate the per-eavesdropper fade substreams.
inline SinrSample compute_sinrs(const NetworkRealization& real,
                                const NetworkConfig& cfg, std::mt19937_64& stream,
                                std::uint64_t seed, std::uint64_t index,
                                bool with_eavesdroppers = true) {
    const detail::PathLoss pl(cfg.alpha);
    const detail::TransmitterList tx(real, cfg);
    SinrSample sample;
    sample.serving_tier = real.serving_tier;
    sample.sinr_user = detail::typical_sinr(real, cfg, tx, pl, stream);
    if (with_eavesdroppers) {
        sample.eavesdropper_sinrs.reserve(real.eavesdroppers.size());
        for (std::size_t e = 0; e < real.eavesdroppers.size(); ++e)
            sample.eavesdropper_sinrs.push_back(
                detail::eavesdropper_sinr(real, cfg, tx, pl, seed, index, e, 0.0));
    }
    return sample;
}

namespace detail {

// One batch record; the eavesdropper maximum uses the early exit, which is
// exact: an eavesdropper abandoned at partial interference I_partial has
// SINR <= signal / I_partial < best, whatever its remaining fades are, and
// the eventual maximizer is always evaluated in full.
inline SinrRecord realize_one(const NetworkConfig& cfg, const SimulationRegion& region,
                              std::uint64_t seed, std::uint64_t index,
                              bool with_eavesdroppers) {
    std::mt19937_64 stream = make_stream(seed, index);
    const NetworkRealization real = build_realization(cfg, region, stream);
    const PathLoss pl(cfg.alpha);
    const TransmitterList tx(real, cfg);
    SinrRecord rec;
    rec.serving_tier = static_cast<std::int16_t>(real.serving_tier);
    rec.user_sinr = typical_sinr(real, cfg, tx, pl, stream);
    if (with_eavesdroppers) {
        double best = 0.0;
        for (std::size_t e = 0; e < real.eavesdroppers.size(); ++e)
            best = std::max(best, eavesdropper_sinr(real, cfg, tx, pl, seed, index, e,
                                                    best));
        rec.max_eav_sinr = best;
    }
    return rec;
}

template <typename Fn>
inline void parallel_for(long n, int workers, Fn&& body) {
    int count = workers > 0 ? workers
                            : static_cast<int>(std::thread::hardware_concurrency());
    count = std::max(1, std::min<int>(count, static_cast<int>(n)));
    if (count == 1) {
        for (long i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));
    pool.reserve(static_cast<std::size_t>(count));
    for (int w = 0; w < count; ++w) {
        const long lo = n * w / count;
        const long hi = n * (w + 1) / count;
        pool.emplace_back([&, lo, hi, w] {
            try {
                for (long i = lo; i < hi; ++i) body(i);
            } catch (...) {
                errors[static_cast<std::size_t>(w)] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (const auto& err : errors)
        if (err) std::rethrow_exception(err);
}

inline ProbabilityEstimate bernoulli_estimate(long hits, long n, std::uint64_t seed) {
    ProbabilityEstimate est;
    est.n = n;
    est.seed = seed;
    if (n <= 0) return est;
    const double p = static_cast<double>(hits) / static_cast<double>(n);
    est.mean = p;
    est.ci_half_width = 1.96 * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
    return est;
}

}  // namespace detail

/// Runs `n` independent realizations and keeps one compact record each.
/// Deterministic in (cfg, region, n, seed) regardless of `workers`.
inline SinrBatch run_batch(const NetworkConfig& cfg, const SimulationRegion& region,
                           long n, std::uint64_t seed, bool with_eavesdroppers,
                           int workers = 0) {
    cfg.validate();
    region.validate(cfg);
    if (n < 1) throw ConfigError("run_batch: need at least one realization");
    SinrBatch batch;
    batch.records.resize(static_cast<std::size_t>(n));
    batch.tier_count = static_cast<int>(cfg.tiers.size());
    batch.with_eavesdroppers = with_eavesdroppers;
    batch.seed = seed;
    detail::parallel_for(n, workers, [&](long i) {
        batch.records[static_cast<std::size_t>(i)] = detail::realize_one(
            cfg, region, seed, static_cast<std::uint64_t>(i), with_eavesdroppers);
    });
    return batch;
}

/// P(SINR_user >= theta_c) from a batch, overall and per serving tier.
inline TierwiseEstimate batch_connection(const SinrBatch& batch, double theta_c) {
    std::vector<long> hits(static_cast<std::size_t>(batch.tier_count) + 1, 0);
    std::vector<long> counts(static_cast<std::size_t>(batch.tier_count) + 1, 0);
    for (const SinrRecord& rec : batch.records) {
        const bool hit = rec.user_sinr >= theta_c;
        ++counts[0];
        hits[0] += hit;
        if (rec.serving_tier >= 0 && rec.serving_tier < batch.tier_count) {
            ++counts[static_cast<std::size_t>(rec.serving_tier) + 1];
            hits[static_cast<std::size_t>(rec.serving_tier) + 1] += hit;
        }
    }
    TierwiseEstimate out;
    out.overall = detail::bernoulli_estimate(hits[0], counts[0], batch.seed);
    for (int t = 0; t < batch.tier_count; ++t)
        out.per_tier.push_back(detail::bernoulli_estimate(
            hits[static_cast<std::size_t>(t) + 1],
            counts[static_cast<std::size_t>(t) + 1], batch.seed));
    return out;
}

/// P(every eavesdropper SINR < theta_s) from a batch with eavesdropper data.
inline TierwiseEstimate batch_secrecy(const SinrBatch& batch, double theta_s) {
    if (!batch.with_eavesdroppers)
        throw ConfigError("batch_secrecy: batch was run without eavesdroppers");
    std::vector<long> hits(static_cast<std::size_t>(batch.tier_count) + 1, 0);
    std::vector<long> counts(static_cast<std::size_t>(batch.tier_count) + 1, 0);
    for (const SinrRecord& rec : batch.records) {
        const bool hit = rec.max_eav_sinr < theta_s;
        ++counts[0];
        hits[0] += hit;
        if (rec.serving_tier >= 0 && rec.serving_tier < batch.tier_count) {
            ++counts[static_cast<std::size_t>(rec.serving_tier) + 1];
            hits[static_cast<std::size_t>(rec.serving_tier) + 1] += hit;
        }
    }
    TierwiseEstimate out;
    out.overall = detail::bernoulli_estimate(hits[0], counts[0], batch.seed);
    for (int t = 0; t < batch.tier_count; ++t)
        out.per_tier.push_back(detail::bernoulli_estimate(
            hits[static_cast<std::size_t>(t) + 1],
            counts[static_cast<std::size_t>(t) + 1], batch.seed));
    return out;
}

/// Monte Carlo connection probability at a single threshold.
inline TierwiseEstimate estimate_connection(const NetworkConfig& cfg,
                                            const SimulationRegion& region,
                                            double theta_c, long n,
                                            std::uint64_t seed, int workers = 0) {
    if (n < 100) throw ConfigError("estimate_connection: need n >= 100");
    return batch_connection(run_batch(cfg, region, n, seed, false, workers), theta_c);
}

/// Monte Carlo secrecy probability at a single threshold.
inline TierwiseEstimate estimate_secrecy(const NetworkConfig& cfg,
                                         const SimulationRegion& region,
                                         double theta_s, long n, std::uint64_t seed,
                                         int workers = 0) {
    if (n < 100) throw ConfigError("estimate_secrecy: need n >= 100");
    return batch_secrecy(run_batch(cfg, region, n, seed, true, workers), theta_s);
}

/// E[exp(-s I)] for one interference aggregate, with per-interferer Rayleigh
/// fades integrated out analytically: each transmitter contributes the factor
/// 1 / (1 + s P d^{-alpha}), and the estimate averages the product over
/// geometry realizations (sample-standard-deviation confidence interval).
inline ProbabilityEstimate estimate_laplace(const NetworkConfig& cfg,
                                            const SimulationRegion& region,
                                            const LaplaceProbe& probe, double s,
                                            long n, std::uint64_t seed,
                                            int workers = 0) {
    cfg.validate();
    region.validate(cfg);
    if (n < 1) throw ConfigError("estimate_laplace: need at least one realization");
    if (!std::isfinite(s) || s < 0.0)
        throw std::invalid_argument("estimate_laplace: s must be finite and >= 0");
    if (probe.condition && probe.target != MeasurementTarget::kTypicalUser)
        throw std::invalid_argument(
            "estimate_laplace: tier conditioning applies to the typical user only");

    const detail::PathLoss pl(cfg.alpha);
    std::vector<double> values(static_cast<std::size_t>(n));
    detail::parallel_for(n, workers, [&](long i) {
        std::mt19937_64 stream = make_stream(seed, static_cast<std::uint64_t>(i));
        const TierCondition* cond = probe.condition ? &*probe.condition : nullptr;
        const NetworkRealization real = build_realization(cfg, region, stream, cond);
        Point target{0.0, 0.0};
        if (probe.target == MeasurementTarget::kRandomEavesdropper) {
            std::uniform_real_distribution<double> unif(0.0, 1.0);
            const double r = 0.5 * region.radius * std::sqrt(unif(stream));
            const double phi = 2.0 * M_PI * unif(stream);
            target = {r * std::cos(phi), r * std::sin(phi)};
        }
        double product = 1.0;
        const auto factor = [&](double power, const Point& pos) {
            product /= 1.0 + s * power / pl.from_square(dist_sq(pos, target));
        };
        switch (probe.source) {
            case InterferenceSource::kBaseStations:
                for (std::size_t t = 0; t < real.bs_per_tier.size(); ++t) {
                    const auto& pts = real.bs_per_tier[t];
                    for (std::size_t b = 0; b < pts.size(); ++b) {
                        if (static_cast<int>(t) == real.serving_tier &&
                            static_cast<int>(b) == real.serving_index)
                            continue;
                        factor(cfg.tiers[t].power, pts[b]);
                    }
                }
                break;
            case InterferenceSource::kUsers: {
                // The typical user's own noise never interferes with itself
                // but does reach an external probe point.
                const std::size_t first =
                    probe.target == MeasurementTarget::kTypicalUser ? 1 : 0;
                for (std::size_t u = first; u < real.scheduled_users.size(); ++u)
                    factor(cfg.user_power, real.scheduled_users[u].pos);
                break;
            }
            case InterferenceSource::kJammers:
                for (int j : real.active_jammers)
                    factor(cfg.jammer_power,
                           real.jammers[static_cast<std::size_t>(j)]);
                break;
        }
        values[static_cast<std::size_t>(i)] = product;
    });

    double sum = 0.0;
    for (double v : values) sum += v;
    const double mean = sum / static_cast<double>(n);
    double ssq = 0.0;
    for (double v : values) ssq += (v - mean) * (v - mean);
    ProbabilityEstimate est;
    est.mean = mean;
    est.n = n;
    est.seed = seed;
    if (n > 1)
        est.ci_half_width =
            1.96 * std::sqrt(ssq / static_cast<double>(n - 1) /
                             static_cast<double>(n));
    return est;
}

}  // namespace hetsec
