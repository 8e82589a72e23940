#pragma once

#include "oee/rng.hpp"
#include "oee/types.hpp"
#include "oee/world.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace oee {

/// Catch counters. Prey are counted per catch; predators once per controller
/// that ever caught.
struct AttributionCounters {
    std::uint64_t prey_caught_inherited = 0;
    std::uint64_t prey_caught_total = 0;
    std::uint64_t predators_caught_any_inherited = 0;
    std::uint64_t predators_caught_any_total = 0;

    AttributionCounters& operator+=(const AttributionCounters& o);
    friend bool operator==(const AttributionCounters&, const AttributionCounters&) = default;
};

struct Attribution {
    std::optional<double> prey;      // low is good for prey
    std::optional<double> predator;  // high is good for predators
};

/// Share of catch events explained by inheritance, against a 2/3 baseline.
inline constexpr double kAttributionBaseline = 2.0 / 3.0;

Attribution attribution(const AttributionCounters& c);

inline constexpr double kVelocityWindow = 12.0;

/// Signed closing speed toward the adversary's position frozen at window start.
double velocity_sample(Vec2 p1, Vec2 a1, Vec2 p2, double window = kVelocityWindow);

/// What the position/tag metrics need from one body at one instant.
struct BodySnapshot {
    Species species = Species::Prey;
    Origin origin = Origin::Random;
    Vec2 position;
    Tag tag = Tag::Plus;
};

std::vector<BodySnapshot> snapshot(const WorldState& world);

struct WallRatio {
    std::optional<double> prey;
    std::optional<double> predator;
};

/// Per-species fraction within `arena.wall_stuck_threshold` of a wall. An
/// optional origin filter restricts both numerator and denominator.
WallRatio wall_stuck_ratio(std::span<const BodySnapshot> bodies, const Arena& arena,
                           std::optional<Origin> origin = std::nullopt);
WallRatio wall_stuck_ratio(const WorldState& world);

struct TagSymmetrySample {
    double prey_tag_avg = 0.0;
    double pred_tag_avg = 0.0;
    double symmetry = 0.0;
    double t = 0.0;
};

/// |mean prey tag + mean predator tag| over inherited controllers only.
std::optional<TagSymmetrySample> tag_symmetry(std::span<const BodySnapshot> bodies, double t = 0.0);
std::optional<TagSymmetrySample> tag_symmetry(const WorldState& world);

/// Monte-Carlo mean of |u + v| with u, v ~ U(-1, 1). Converges to 2/3.
double random_symmetry_baseline(std::size_t n_pairs, RngStream& rng);
inline constexpr double kSymmetryBaseline = 2.0 / 3.0;

/// One raw observation prior to bucketing.
struct MetricSample {
    double t = 0.0;
    std::string metric;
    std::string species;
    std::string origin;
    double value = 0.0;
};

/// One bucket mean. `t` is the bucket start.
struct SeriesPoint {
    double t = 0.0;
    std::string metric;
    std::string species;
    std::string origin;
    double value = 0.0;

    friend bool operator==(const SeriesPoint&, const SeriesPoint&) = default;
};

struct MetricsSeries {
    std::vector<SeriesPoint> points;

    std::vector<SeriesPoint> group(std::string_view metric, std::string_view species,
                                   std::string_view origin) const;
    friend bool operator==(const MetricsSeries&, const MetricsSeries&) = default;
};

/// Groups samples by (metric, species, origin) and averages them over
/// consecutive buckets covering [0, horizon]. A sample at exactly `horizon`
/// falls in the last bucket. Empty buckets produce no point. Groups are
/// emitted in order of first appearance.
MetricsSeries bucket_series(std::span<const MetricSample> samples, double bucket, double horizon);

std::size_t bucket_count(double bucket, double horizon);

}  // namespace oee
