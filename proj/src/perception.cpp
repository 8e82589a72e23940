#include "oee/perception.hpp"

#include <algorithm>

namespace oee {

double tag_ratio(std::span<const Agent> agents) {
    if (agents.empty())
        return 0.0;
    const auto plus = std::count_if(agents.begin(), agents.end(),
                                    [](const Agent& a) { return a.tag() == Tag::Plus; });
    const double n = static_cast<double>(agents.size());
    return (static_cast<double>(plus) - n / 2.0) / n;
}

PerceptionInputs sense(AgentId agent, const WorldState& world) {
    PerceptionInputs in;
    in.tag_ratio = tag_ratio(world.agents);

    const auto adversary = nearest_observable_adversary(agent, world);
    if (!adversary)
        return in;

    const Agent& self = world.at(agent);
    const Vec2 target = world.at(*adversary).pose.position;
    in.angle = relative_bearing(self.pose, target) < 0.0 ? -1.0 : 1.0;
    in.distance =
        std::clamp(distance(self.pose.position, target) / world.arena.diagonal(), 0.0, 1.0);
    return in;
}

}  // namespace oee
