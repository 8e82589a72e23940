#pragma once

#include "oee/brain.hpp"
#include "oee/locomotion.hpp"
#include "oee/rng.hpp"
#include "oee/types.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace oee {

inline constexpr std::size_t kBodyCount = 30;
inline constexpr std::size_t kSpeciesFloor = 7;

/// Square arena with corners (0,0) and (side_length, side_length).
struct Arena {
    double side_length = 40.0;
    double wall_stuck_threshold = 1.0;

    bool contains(Vec2 p) const {
        return p.x >= 0.0 && p.y >= 0.0 && p.x <= side_length && p.y <= side_length;
    }
    Vec2 clamp(Vec2 p) const;
    double diagonal() const;
};

/// One body avatar together with the controller currently inhabiting it.
struct Agent {
    AgentId id;
    Species species = Species::Prey;
    Pose pose;
    BrainGenotype brain;
    TagState tag_state;
    double last_fed = 0.0;  // birth or last catch; predators only
    bool active = true;     // newborn prey stay inactive until clear of predators
    double birth_time = 0.0;
    std::uint64_t controller = 0;  // serial of the inhabiting controller
    GaitOscillator gait;
    ControlDecision decision;

    double hunger(double now) const { return now - last_fed; }
    Tag tag() const { return tag_state.tag; }
};

struct DeathSchedule {
    double next_death_time = 0.0;
    double interval = 0.0;
};

/// Death-procedure interval: 25 - predator count.
inline double death_interval(std::size_t predators) {
    return 25.0 - static_cast<double>(predators);
}

struct WorldState {
    Arena arena;
    double clock = 0.0;
    std::vector<Agent> agents;
    DeathSchedule schedule;
    std::uint64_t next_controller = 0;
    RngStreams rng;

    Agent& at(AgentId id) { return agents.at(id.value); }
    const Agent& at(AgentId id) const { return agents.at(id.value); }
    std::size_t count(Species s) const;
};

/// Signed angle from the observer's heading to the target; negative means the
/// target is on the left. Coincident points yield 0.
double relative_bearing(const Pose& observer, Vec2 target);

double distance_to_nearest_wall(Vec2 p, const Arena& arena);

/// Whether `observer` can perceive `target`: opposite species, same tag, and
/// the target is active.
bool observable(const Agent& observer, const Agent& target);

/// Closest observable opposite-species agent; ties go to the lowest id.
std::optional<AgentId> nearest_observable_adversary(AgentId agent, const WorldState& world);

}  // namespace oee
