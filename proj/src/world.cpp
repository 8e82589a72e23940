#include "oee/world.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace oee {

Vec2 Arena::clamp(Vec2 p) const {
    return {std::clamp(p.x, 0.0, side_length), std::clamp(p.y, 0.0, side_length)};
}

double Arena::diagonal() const { return side_length * std::numbers::sqrt2; }

std::size_t WorldState::count(Species s) const {
    return static_cast<std::size_t>(
        std::count_if(agents.begin(), agents.end(), [s](const Agent& a) { return a.species == s; }));
}

double relative_bearing(const Pose& observer, Vec2 target) {
    const Vec2 d = target - observer.position;
    if (d.x == 0.0 && d.y == 0.0)
        return 0.0;
    // Counter-clockwise angle is "left", so negate to make right positive.
    return wrap_angle(-(std::atan2(d.y, d.x) - observer.heading));
}

double distance_to_nearest_wall(Vec2 p, const Arena& arena) {
    const double s = arena.side_length;
    return std::max(0.0, std::min({p.x, s - p.x, p.y, s - p.y}));
}

bool observable(const Agent& observer, const Agent& target) {
    return target.species == opposite(observer.species) && target.tag() == observer.tag() &&
           target.active;
}

std::optional<AgentId> nearest_observable_adversary(AgentId agent, const WorldState& world) {
    const Agent& self = world.at(agent);
    std::optional<AgentId> best;
    double best_d = std::numeric_limits<double>::infinity();
    for (const Agent& other : world.agents) {
        if (!observable(self, other))
            continue;
        const double d = distance(self.pose.position, other.pose.position);
        if (d < best_d) {  // strict: earlier (lower) ids win ties
            best_d = d;
            best = other.id;
        }
    }
    return best;
}

}  // namespace oee
