#pragma once

#include "oee/brain.hpp"
#include "oee/events.hpp"
#include "oee/locomotion.hpp"
#include "oee/world.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace oee {

struct LifecycleParams {
    double arena_side = 40.0;
    double wall_threshold = 1.0;
    std::size_t initial_prey = 16;
    std::size_t initial_predators = 14;
    double catch_radius = 1.0;
    double exemption_distance = 5.0;
    double prey_repro_distance = 5.0;
    double spawn_safe_distance = 5.0;
    double mutation_sigma = 0.1;
    double random_birth_prob = 1.0 / 3.0;
    double tag_cooldown = kDefaultTagCooldown;
    Topology topology;
    GaitOscillator gait;
};

/// Builds the initial population: random controllers, uniform poses and tags,
/// every prey inactive, first death procedure scheduled at the initial interval.
/// Emits one Birth per body.
WorldState init_population(const LifecycleParams& params, std::uint64_t seed, EventLog& log);

struct CatchPair {
    AgentId predator;
    AgentId prey;
    double distance = 0.0;

    friend bool operator==(const CatchPair&, const CatchPair&) = default;
};

/// Active prey within `catch_radius` (inclusive) of a predator, tags ignored.
/// Each prey is claimed once by its nearest predator, ties to the lowest id.
std::vector<CatchPair> check_catches(const WorldState& world, double catch_radius);

struct CatchOutcome {
    Origin predator_origin;
    Origin prey_origin;
    std::uint64_t predator_controller;
};

/// Kills the prey and reproduces the predator into its body. Returns nothing
/// (and logs a guard) when the prey population is already at the floor.
std::optional<CatchOutcome> handle_catch(const CatchPair& pair, WorldState& world,
                                         const LifecycleParams& params, EventLog& log);

/// Hunger-ranked predator death followed by prey reproduction into the body.
/// The closest prey within `prey_repro_distance` is the parent; failing that,
/// a uniformly chosen prey.
/// Always advances the schedule, even when nobody dies.
void predator_death_procedure(WorldState& world, const LifecycleParams& params, EventLog& log);

/// Sacrifices one uniformly chosen active prey to refill the predator side.
/// Returns false when the preconditions do not hold.
bool prey_sacrifice(WorldState& world, const LifecycleParams& params, EventLog& log);

/// Activates every inactive prey that is at least `spawn_safe_distance` from all predators.
void update_spawn_protection(WorldState& world, double spawn_safe_distance);

}  // namespace oee
