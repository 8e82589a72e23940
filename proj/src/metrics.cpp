#include "oee/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <tuple>

namespace oee {

AttributionCounters& AttributionCounters::operator+=(const AttributionCounters& o) {
    prey_caught_inherited += o.prey_caught_inherited;
    prey_caught_total += o.prey_caught_total;
    predators_caught_any_inherited += o.predators_caught_any_inherited;
    predators_caught_any_total += o.predators_caught_any_total;
    return *this;
}

Attribution attribution(const AttributionCounters& c) {
    Attribution a;
    if (c.prey_caught_total > 0)
        a.prey = static_cast<double>(c.prey_caught_inherited) /
                 static_cast<double>(c.prey_caught_total);
    if (c.predators_caught_any_total > 0)
        a.predator = static_cast<double>(c.predators_caught_any_inherited) /
                     static_cast<double>(c.predators_caught_any_total);
    return a;
}

double velocity_sample(Vec2 p1, Vec2 a1, Vec2 p2, double window) {
    return (distance(p1, a1) - distance(p2, a1)) / window;
}

std::vector<BodySnapshot> snapshot(const WorldState& world) {
    std::vector<BodySnapshot> out;
    out.reserve(world.agents.size());
    for (const Agent& a : world.agents)
        out.push_back({a.species, a.brain.origin(), a.pose.position, a.tag()});
    return out;
}

WallRatio wall_stuck_ratio(std::span<const BodySnapshot> bodies, const Arena& arena,
                           std::optional<Origin> origin) {
    std::size_t stuck[2] = {0, 0};
    std::size_t total[2] = {0, 0};
    for (const BodySnapshot& b : bodies) {
        if (origin && b.origin != *origin)
            continue;
        const auto s = static_cast<std::size_t>(b.species);
        ++total[s];
        if (distance_to_nearest_wall(b.position, arena) <= arena.wall_stuck_threshold)
            ++stuck[s];
    }
    auto ratio = [&](Species s) -> std::optional<double> {
        const auto i = static_cast<std::size_t>(s);
        if (total[i] == 0)
            return std::nullopt;
        return static_cast<double>(stuck[i]) / static_cast<double>(total[i]);
    };
    return {ratio(Species::Prey), ratio(Species::Predator)};
}

WallRatio wall_stuck_ratio(const WorldState& world) {
    const auto bodies = snapshot(world);
    return wall_stuck_ratio(bodies, world.arena);
}

std::optional<TagSymmetrySample> tag_symmetry(std::span<const BodySnapshot> bodies, double t) {
    double sum[2] = {0.0, 0.0};
    std::size_t n[2] = {0, 0};
    for (const BodySnapshot& b : bodies) {
        if (b.origin != Origin::Inherited)
            continue;
        const auto s = static_cast<std::size_t>(b.species);
        sum[s] += tag_value(b.tag);
        ++n[s];
    }
    if (n[0] == 0 || n[1] == 0)
        return std::nullopt;

    TagSymmetrySample out;
    out.prey_tag_avg = sum[static_cast<std::size_t>(Species::Prey)] /
                       static_cast<double>(n[static_cast<std::size_t>(Species::Prey)]);
    out.pred_tag_avg = sum[static_cast<std::size_t>(Species::Predator)] /
                       static_cast<double>(n[static_cast<std::size_t>(Species::Predator)]);
    out.symmetry = std::abs(out.prey_tag_avg + out.pred_tag_avg);
    out.t = t;
    return out;
}

std::optional<TagSymmetrySample> tag_symmetry(const WorldState& world) {
    const auto bodies = snapshot(world);
    return tag_symmetry(bodies, world.clock);
}

double random_symmetry_baseline(std::size_t n_pairs, RngStream& rng) {
    if (n_pairs == 0)
        throw std::invalid_argument("random_symmetry_baseline needs at least one pair");
    double acc = 0.0;
    for (std::size_t i = 0; i < n_pairs; ++i) {
        const double u = rng.uniform(-1.0, 1.0);
        const double v = rng.uniform(-1.0, 1.0);
        acc += std::abs(u + v);
    }
    return acc / static_cast<double>(n_pairs);
}

std::vector<SeriesPoint> MetricsSeries::group(std::string_view metric, std::string_view species,
                                              std::string_view origin) const {
    std::vector<SeriesPoint> out;
    for (const SeriesPoint& p : points)
        if (p.metric == metric && p.species == species && p.origin == origin)
            out.push_back(p);
    return out;
}

std::size_t bucket_count(double bucket, double horizon) {
    if (!(bucket > 0.0))
        throw std::invalid_argument("bucket width must be positive");
    // Tolerate representation error so 6000/200 yields exactly 30.
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(horizon / bucket - 1e-9)));
}

MetricsSeries bucket_series(std::span<const MetricSample> samples, double bucket, double horizon) {
    const std::size_t n_buckets = bucket_count(bucket, horizon);

    using Key = std::tuple<std::string, std::string, std::string>;
    struct Acc {
        std::vector<double> sum;
        std::vector<std::size_t> n;
    };
    std::vector<Key> order;
    std::map<Key, Acc> groups;

    for (const MetricSample& s : samples) {
        Key key{s.metric, s.species, s.origin};
        auto [it, inserted] = groups.try_emplace(key);
        if (inserted) {
            it->second.sum.assign(n_buckets, 0.0);
            it->second.n.assign(n_buckets, 0);
            order.push_back(std::move(key));
        }
        const auto raw = static_cast<std::size_t>(std::max(0.0, std::floor(s.t / bucket)));
        const std::size_t b = std::min(raw, n_buckets - 1);
        it->second.sum[b] += s.value;
        ++it->second.n[b];
    }

    MetricsSeries out;
    for (const Key& key : order) {
        const Acc& acc = groups.at(key);
        for (std::size_t b = 0; b < n_buckets; ++b) {
            if (acc.n[b] == 0)
                continue;
            out.points.push_back({static_cast<double>(b) * bucket, std::get<0>(key),
                                  std::get<1>(key), std::get<2>(key),
                                  acc.sum[b] / static_cast<double>(acc.n[b])});
        }
    }
    return out;
}

}  // namespace oee
