#pragma once

#include "oee/types.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

namespace oee {

enum class EventKind : std::uint8_t { Birth, Death, Catch, TagSwitch, Sacrifice, Guard, Sample };

/// How a controller came to inhabit a body.
enum class BirthCause : std::uint8_t {
    Init,           // initial population
    Catch,          // predator reproduced into the caught prey's body
    PredatorDeath,  // nearby prey reproduced into the dead predator's body
    Refill,         // predator died with no prey nearby; random prey lineage
    Sacrifice,      // predator born into a sacrificed prey's body
};

enum class DeathCause : std::uint8_t { Caught, Hunger, Sacrificed };

enum class GuardReason : std::uint8_t {
    PreyFloor,      // catch ignored: prey already at the floor
    PredatorFloor,  // death procedure skipped: predators at the floor
    AllExempt,      // every predator was near an observable prey
};

struct BirthPayload {
    Species species = Species::Prey;
    Origin origin = Origin::Random;
    BirthCause cause = BirthCause::Init;
    std::optional<AgentId> parent;
    std::uint64_t controller = 0;
    Tag tag = Tag::Plus;
    std::size_t hidden = 0;
    std::vector<double> genotype;

    friend bool operator==(const BirthPayload&, const BirthPayload&) = default;
};

struct DeathPayload {
    Species species = Species::Prey;
    DeathCause cause = DeathCause::Caught;
    std::uint64_t controller = 0;
    double hunger = 0.0;

    friend bool operator==(const DeathPayload&, const DeathPayload&) = default;
};

/// Record agent is the catching predator.
struct CatchPayload {
    AgentId prey;
    double distance = 0.0;

    friend bool operator==(const CatchPayload&, const CatchPayload&) = default;
};

struct TagSwitchPayload {
    Tag tag = Tag::Plus;

    friend bool operator==(const TagSwitchPayload&, const TagSwitchPayload&) = default;
};

struct SacrificePayload {
    friend bool operator==(const SacrificePayload&, const SacrificePayload&) = default;
};

struct GuardPayload {
    GuardReason reason = GuardReason::PreyFloor;
    std::optional<AgentId> other;

    friend bool operator==(const GuardPayload&, const GuardPayload&) = default;
};

/// Periodic per-agent observation used by the position-based metrics.
struct SamplePayload {
    Vec2 position;
    std::optional<AgentId> adversary;
    bool active = true;

    friend bool operator==(const SamplePayload&, const SamplePayload&) = default;
};

using EventPayload = std::variant<BirthPayload, DeathPayload, CatchPayload, TagSwitchPayload,
                                  SacrificePayload, GuardPayload, SamplePayload>;

struct EventRecord {
    double t = 0.0;
    AgentId agent;
    EventPayload payload;

    EventKind kind() const { return static_cast<EventKind>(payload.index()); }

    friend bool operator==(const EventRecord&, const EventRecord&) = default;
};

using EventLog = std::vector<EventRecord>;

std::string_view to_string(EventKind k);
std::string_view to_string(BirthCause c);
std::string_view to_string(DeathCause c);
std::string_view to_string(GuardReason r);

}  // namespace oee
