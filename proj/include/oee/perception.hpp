#pragma once

#include "oee/brain.hpp"
#include "oee/world.hpp"

#include <span>

namespace oee {

/// (P - N/2) / N where P counts agents tagged +1 out of N.
double tag_ratio(std::span<const Agent> agents);

/// Builds the three network inputs for one agent. With no observable
/// adversary the agent senses angle +1 at distance 1.
PerceptionInputs sense(AgentId agent, const WorldState& world);

}  // namespace oee
