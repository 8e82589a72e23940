#include "oee/lifecycle.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace oee {

namespace {

void log_birth(const Agent& a, BirthCause cause, std::optional<AgentId> parent, double t,
               EventLog& log) {
    const auto w = a.brain.weights();
    log.push_back({t, a.id,
                   BirthPayload{a.species, a.brain.origin(), cause, parent, a.controller, a.tag(),
                                a.brain.topology().hidden, std::vector<double>(w.begin(), w.end())}});
}

void log_death(const Agent& a, DeathCause cause, double t, EventLog& log) {
    const double hunger = a.species == Species::Predator ? a.hunger(t) : 0.0;
    log.push_back({t, a.id, DeathPayload{a.species, cause, a.controller, hunger}});
}

/// Installs a new controller in `body`. With a parent, the controller is a
/// mutated copy of the parent's unless the random-birth draw fires.
void give_birth(WorldState& world, AgentId body, Species species, std::optional<AgentId> parent,
                BirthCause cause, const LifecycleParams& params, EventLog& log) {
    std::optional<BrainGenotype> brain;
    if (parent && !world.rng.reproduction.bernoulli(params.random_birth_prob))
        brain = mutate(world.at(*parent).brain, params.mutation_sigma, world.rng.mutation);
    else
        brain = random_genotype(params.topology, world.rng.mutation);

    Agent& a = world.at(body);
    a.species = species;
    a.brain = std::move(*brain);
    a.last_fed = world.clock;
    a.birth_time = world.clock;
    a.active = species == Species::Predator;
    a.controller = world.next_controller++;

    const auto logged_parent = a.brain.origin() == Origin::Inherited ? parent : std::nullopt;
    log_birth(a, cause, logged_parent, world.clock, log);
}

std::vector<AgentId> ids_of(const WorldState& world, Species s) {
    std::vector<AgentId> out;
    for (const Agent& a : world.agents)
        if (a.species == s)
            out.push_back(a.id);
    return out;
}

void recompute_interval(WorldState& world) {
    world.schedule.interval = death_interval(world.count(Species::Predator));
}

}  // namespace

WorldState init_population(const LifecycleParams& params, std::uint64_t seed, EventLog& log) {
    WorldState world;
    world.arena = Arena{params.arena_side, params.wall_threshold};
    world.rng = RngStreams(seed);
    world.agents.reserve(kBodyCount);

    RngStream& rng = world.rng.init;
    for (std::size_t i = 0; i < kBodyCount; ++i) {
        const Species species = i < params.initial_prey ? Species::Prey : Species::Predator;
        Pose pose;
        pose.position = {rng.uniform(0.0, params.arena_side), rng.uniform(0.0, params.arena_side)};
        pose.heading = wrap_angle(rng.uniform(-kPi, kPi));
        GaitOscillator gait = params.gait;
        gait.phase = rng.uniform(0.0, 2.0 * kPi);
        const Tag tag = rng.coin() ? Tag::Plus : Tag::Minus;
        BrainGenotype brain = random_genotype(params.topology, rng);

        world.agents.push_back(Agent{
            .id = AgentId{static_cast<std::uint32_t>(i)},
            .species = species,
            .pose = pose,
            .brain = std::move(brain),
            // Initial tags may switch at the first decision.
            .tag_state = TagState{tag, -params.tag_cooldown},
            .last_fed = 0.0,
            .active = species == Species::Predator,
            .birth_time = 0.0,
            .controller = world.next_controller++,
            .gait = gait,
            .decision = {},
        });
        log_birth(world.agents.back(), BirthCause::Init, std::nullopt, 0.0, log);
    }

    recompute_interval(world);
    world.schedule.next_death_time = world.schedule.interval;
    return world;
}

std::vector<CatchPair> check_catches(const WorldState& world, double catch_radius) {
    std::vector<CatchPair> out;
    for (const Agent& prey : world.agents) {
        if (prey.species != Species::Prey || !prey.active)
            continue;
        std::optional<CatchPair> best;
        for (const Agent& pred : world.agents) {
            if (pred.species != Species::Predator)
                continue;
            const double d = distance(prey.pose.position, pred.pose.position);
            if (d <= catch_radius && (!best || d < best->distance))
                best = CatchPair{pred.id, prey.id, d};
        }
        if (best)
            out.push_back(*best);
    }
    return out;
}

std::optional<CatchOutcome> handle_catch(const CatchPair& pair, WorldState& world,
                                         const LifecycleParams& params, EventLog& log) {
    const double now = world.clock;
    if (world.count(Species::Prey) <= kSpeciesFloor) {
        log.push_back({now, pair.prey, GuardPayload{GuardReason::PreyFloor, pair.predator}});
        return std::nullopt;
    }

    Agent& predator = world.at(pair.predator);
    const Agent& prey = world.at(pair.prey);
    const CatchOutcome outcome{predator.brain.origin(), prey.brain.origin(), predator.controller};

    log.push_back({now, pair.predator, CatchPayload{pair.prey, pair.distance}});
    log_death(prey, DeathCause::Caught, now, log);
    predator.last_fed = now;
    give_birth(world, pair.prey, Species::Predator, pair.predator, BirthCause::Catch, params, log);
    recompute_interval(world);
    return outcome;
}

void predator_death_procedure(WorldState& world, const LifecycleParams& params, EventLog& log) {
    const double now = world.clock;

    std::vector<AgentId> candidates = ids_of(world, Species::Predator);
    std::stable_sort(candidates.begin(), candidates.end(), [&](AgentId a, AgentId b) {
        return world.at(a).hunger(now) > world.at(b).hunger(now);
    });

    auto finish = [&] {
        recompute_interval(world);
        world.schedule.next_death_time += world.schedule.interval;
    };

    if (candidates.size() <= kSpeciesFloor) {
        log.push_back({now, candidates.front(), GuardPayload{GuardReason::PredatorFloor, {}}});
        finish();
        return;
    }

    auto exempt = [&](AgentId id) {
        const auto prey = nearest_observable_adversary(id, world);
        return prey && distance(world.at(id).pose.position, world.at(*prey).pose.position) <=
                           params.exemption_distance;
    };
    const auto victim = std::find_if_not(candidates.begin(), candidates.end(), exempt);
    if (victim == candidates.end()) {
        log.push_back({now, candidates.front(), GuardPayload{GuardReason::AllExempt, {}}});
        finish();
        return;
    }

    const Agent& dead = world.at(*victim);
    log_death(dead, DeathCause::Hunger, now, log);

    std::optional<AgentId> parent;
    double best = std::numeric_limits<double>::infinity();
    for (const Agent& a : world.agents) {
        if (a.species != Species::Prey)
            continue;
        const double d = distance(a.pose.position, dead.pose.position);
        if (d <= params.prey_repro_distance && d < best) {
            best = d;
            parent = a.id;
        }
    }
    BirthCause cause = BirthCause::PredatorDeath;
    if (!parent) {
        // Nobody close enough: a uniformly chosen prey lineage refills the body.
        const std::vector<AgentId> prey = ids_of(world, Species::Prey);
        parent = prey[world.rng.reproduction.index(prey.size())];
        cause = BirthCause::Refill;
    }
    give_birth(world, *victim, Species::Prey, parent, cause, params, log);
    finish();
}

bool prey_sacrifice(WorldState& world, const LifecycleParams& params, EventLog& log) {
    if (world.count(Species::Predator) >= kSpeciesFloor ||
        world.count(Species::Prey) <= kSpeciesFloor)
        return false;

    std::vector<AgentId> eligible;
    for (const Agent& a : world.agents)
        if (a.species == Species::Prey && a.active)
            eligible.push_back(a.id);
    if (eligible.empty())
        return false;

    const double now = world.clock;
    const AgentId victim = eligible[world.rng.sacrifice.index(eligible.size())];
    const std::vector<AgentId> predators = ids_of(world, Species::Predator);
    std::optional<AgentId> parent;
    if (!predators.empty())
        parent = predators[world.rng.sacrifice.index(predators.size())];

    log.push_back({now, victim, SacrificePayload{}});
    log_death(world.at(victim), DeathCause::Sacrificed, now, log);
    give_birth(world, victim, Species::Predator, parent, BirthCause::Sacrifice, params, log);
    recompute_interval(world);
    return true;
}

void update_spawn_protection(WorldState& world, double spawn_safe_distance) {
    for (Agent& prey : world.agents) {
        if (prey.species != Species::Prey || prey.active)
            continue;
        const bool clear = std::all_of(world.agents.begin(), world.agents.end(), [&](const Agent& p) {
            return p.species != Species::Predator ||
                   distance(p.pose.position, prey.pose.position) >= spawn_safe_distance;
        });
        if (clear)
            prey.active = true;
    }
}

}  // namespace oee
