#include "oee/lifecycle.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>

using namespace oee;
using oee::testing::WorldBuilder;

namespace {

template <class P>
std::vector<P> payloads(const EventLog& log) {
    std::vector<P> out;
    for (const EventRecord& r : log)
        if (const P* p = std::get_if<P>(&r.payload))
            out.push_back(*p);
    return out;
}

/// Sets every predator's hunger to 0 at `now` so only hand-set ones stand out.
void feed_all(WorldState& w, double now) {
    w.clock = now;
    for (Agent& a : w.agents)
        a.last_fed = now;
}

}  // namespace

TEST_CASE("init_population") {
    LifecycleParams params;
    EventLog log;
    const WorldState w = init_population(params, 11, log);

    CHECK(w.agents.size() == 30);
    CHECK(w.count(Species::Prey) == 16);
    CHECK(w.count(Species::Predator) == 14);
    CHECK(w.schedule.interval == 11.0);
    CHECK(w.schedule.next_death_time == 11.0);
    CHECK(log.size() == 30);
    for (const Agent& a : w.agents) {
        CHECK(w.arena.contains(a.pose.position));
        CHECK(a.brain.origin() == Origin::Random);
        CHECK(a.active == (a.species == Species::Predator));
    }
    for (const BirthPayload& b : payloads<BirthPayload>(log)) {
        CHECK(b.cause == BirthCause::Init);
        CHECK_FALSE(b.parent);
    }

    EventLog again;
    const WorldState w2 = init_population(params, 11, again);
    CHECK(again == log);
    EventLog other;
    init_population(params, 12, other);
    CHECK(other != log);
    CHECK(w2.agents.front().pose == w.agents.front().pose);
}

TEST_CASE("check_catches: radius inclusive, tags ignored") {
    WorldBuilder b;
    const AgentId pred = b.predator({10.0, 10.0}, Tag::Plus);
    const AgentId near = b.prey({10.9, 10.0}, Tag::Minus);
    b.prey({10.0, 11.5}, Tag::Plus);
    const AgentId edge = b.prey({9.0, 10.0}, Tag::Plus);
    const auto catches = check_catches(b.world, 1.0);
    REQUIRE(catches.size() == 2);
    CHECK(catches[0].predator == pred);
    CHECK(catches[0].prey == near);
    CHECK(catches[0].distance == doctest::Approx(0.9));
    CHECK(catches[1].prey == edge);
    CHECK(catches[1].distance == 1.0);
}

TEST_CASE("check_catches: inactive prey cannot be caught") {
    WorldBuilder b;
    b.predator({10.0, 10.0});
    b.prey({10.5, 10.0}, Tag::Plus, /*active=*/false);
    CHECK(check_catches(b.world, 1.0).empty());
}

TEST_CASE("check_catches: nearest predator claims, ties to the lowest id") {
    WorldBuilder b;
    b.predator({10.0, 10.0});
    const AgentId p1 = b.predator({10.6, 10.0});
    b.prey({10.4, 10.0});
    auto c = check_catches(b.world, 1.0);
    REQUIRE(c.size() == 1);
    CHECK(c[0].predator == p1);

    WorldBuilder t;
    const AgentId q0 = t.predator({10.0, 10.0});
    t.predator({11.0, 10.0});
    t.prey({10.5, 10.0});
    c = check_catches(t.world, 1.0);
    REQUIRE(c.size() == 1);
    CHECK(c[0].predator == q0);
}

TEST_CASE("handle_catch: prey body becomes a predator") {
    WorldBuilder b;
    const AgentId pred = b.predator({10.0, 10.0});
    const AgentId prey = b.prey({10.5, 10.0});
    b.pad(Species::Prey, 15);
    b.pad(Species::Predator, 13);
    b.world.clock = 42.0;
    LifecycleParams params;
    EventLog log;

    const auto out = handle_catch({pred, prey, 0.5}, b.world, params, log);
    REQUIRE(out);
    CHECK(b.world.count(Species::Prey) == 15);
    CHECK(b.world.count(Species::Predator) == 15);
    CHECK(b.world.at(prey).species == Species::Predator);
    CHECK(b.world.at(prey).active);
    CHECK(b.world.at(pred).last_fed == 42.0);
    CHECK(b.world.schedule.interval == 10.0);

    REQUIRE(log.size() == 3);
    CHECK(log[0].kind() == EventKind::Catch);
    CHECK(log[0].agent == pred);
    CHECK(log[1].kind() == EventKind::Death);
    CHECK(std::get<DeathPayload>(log[1].payload).cause == DeathCause::Caught);
    const auto& birth = std::get<BirthPayload>(log[2].payload);
    CHECK(birth.species == Species::Predator);
    CHECK(birth.cause == BirthCause::Catch);
    if (birth.origin == Origin::Inherited)
        CHECK(birth.parent == pred);
}

TEST_CASE("handle_catch: prey floor is respected") {
    WorldBuilder b;
    const AgentId pred = b.predator({10.0, 10.0});
    const AgentId prey = b.prey({10.5, 10.0});
    b.pad(Species::Prey, 6);
    b.pad(Species::Predator, 22);
    LifecycleParams params;
    EventLog log;
    CHECK_FALSE(handle_catch({pred, prey, 0.5}, b.world, params, log));
    CHECK(b.world.count(Species::Prey) == 7);
    REQUIRE(log.size() == 1);
    CHECK(std::get<GuardPayload>(log[0].payload).reason == GuardReason::PreyFloor);
}

TEST_CASE("handle_catch: one third of newborns are random") {
    LifecycleParams params;
    std::size_t random = 0, total = 0;
    WorldBuilder b;
    const AgentId pred = b.predator({10.0, 10.0});
    const AgentId prey = b.prey({10.5, 10.0});
    b.pad(Species::Prey, 15);
    b.pad(Species::Predator, 13);
    const WorldState start = b.world;
    RngStreams carried(99);
    for (int i = 0; i < 20'000; ++i) {
        WorldState w = start;
        w.rng = carried;
        EventLog log;
        handle_catch({pred, prey, 0.5}, w, params, log);
        carried = w.rng;
        random += w.at(prey).brain.origin() == Origin::Random;
        ++total;
    }
    const double share = static_cast<double>(random) / static_cast<double>(total);
    // 5 sigma for a binomial(20000, 1/3)
    CHECK(std::abs(share - 1.0 / 3.0) < 5.0 * std::sqrt((1.0 / 3.0) * (2.0 / 3.0) / total));
}

namespace {

/// Three hungry predators far from any prey, padded with fed ones to 11 predators.
struct HungryWorld {
    WorldBuilder b;
    AgentId h40, h30, h20, prey;
    HungryWorld() {
        prey = b.prey({5.0, 5.0}, Tag::Plus);
        h20 = b.predator({20.0, 30.0}, Tag::Minus);
        h40 = b.predator({30.0, 30.0}, Tag::Minus);
        h30 = b.predator({25.0, 30.0}, Tag::Minus);
        b.pad(Species::Predator, 8, Tag::Minus);
        b.pad(Species::Prey, 16, Tag::Minus);
        feed_all(b.world, 100.0);
        b.world.at(h40).last_fed = 60.0;
        b.world.at(h30).last_fed = 70.0;
        b.world.at(h20).last_fed = 80.0;
        b.world.schedule = {100.0, 25.0 - 11.0};
    }
};

}  // namespace

TEST_CASE("death procedure: hungriest predator dies, prey reborn in its body") {
    HungryWorld hw;
    WorldState& w = hw.b.world;
    LifecycleParams params;
    EventLog log;
    predator_death_procedure(w, params, log);

    CHECK(w.at(hw.h40).species == Species::Prey);
    CHECK_FALSE(w.at(hw.h40).active);
    CHECK(w.at(hw.h30).species == Species::Predator);
    CHECK(w.count(Species::Predator) == 10);
    CHECK(w.schedule.interval == 15.0);
    CHECK(w.schedule.next_death_time == 115.0);

    const auto deaths = payloads<DeathPayload>(log);
    REQUIRE(deaths.size() == 1);
    CHECK(deaths[0].cause == DeathCause::Hunger);
    CHECK(deaths[0].hunger == 40.0);
    const auto births = payloads<BirthPayload>(log);
    REQUIRE(births.size() == 1);
    CHECK(births[0].species == Species::Prey);
    // No prey within 5 of (30, 30): the parent is drawn from all prey.
    CHECK(births[0].cause == BirthCause::Refill);
}

TEST_CASE("death procedure: closest prey within range is the parent") {
    HungryWorld hw;
    WorldState& w = hw.b.world;
    w.at(hw.prey).pose.position = {33.0, 30.0};
    LifecycleParams params;
    params.random_birth_prob = 0.0;
    EventLog log;
    predator_death_procedure(w, params, log);
    const auto births = payloads<BirthPayload>(log);
    REQUIRE(births.size() == 1);
    CHECK(births[0].cause == BirthCause::PredatorDeath);
    CHECK(births[0].parent == hw.prey);
    CHECK(births[0].origin == Origin::Inherited);
}

TEST_CASE("death procedure: exemption near observable prey") {
    HungryWorld hw;
    WorldState& w = hw.b.world;
    // Prey at distance 3 from the hungriest predator, same tag: exempt.
    w.at(hw.prey).pose.position = {33.0, 30.0};
    w.at(hw.prey).tag_state.tag = Tag::Minus;
    LifecycleParams params;
    EventLog log;
    predator_death_procedure(w, params, log);
    CHECK(w.at(hw.h40).species == Species::Predator);
    CHECK(w.at(hw.h30).species == Species::Prey);
    CHECK(payloads<DeathPayload>(log).at(0).hunger == 30.0);
}

TEST_CASE("death procedure: a tag switch removes the exemption") {
    HungryWorld hw;
    WorldState& w = hw.b.world;
    w.at(hw.prey).pose.position = {33.0, 30.0};
    w.at(hw.prey).tag_state.tag = Tag::Plus;  // different tag: not observable
    LifecycleParams params;
    EventLog log;
    predator_death_procedure(w, params, log);
    CHECK(w.at(hw.h40).species == Species::Prey);
}

TEST_CASE("death procedure: skipped at the predator floor, schedule still advances") {
    WorldBuilder b;
    b.pad(Species::Predator, 7);
    b.pad(Species::Prey, 23);
    feed_all(b.world, 50.0);
    b.world.schedule = {50.0, 18.0};
    LifecycleParams params;
    EventLog log;
    predator_death_procedure(b.world, params, log);
    CHECK(b.world.count(Species::Predator) == 7);
    REQUIRE(log.size() == 1);
    CHECK(std::get<GuardPayload>(log[0].payload).reason == GuardReason::PredatorFloor);
    CHECK(b.world.schedule.next_death_time == 68.0);
}

TEST_CASE("death procedure: hunger ties go to the lowest id") {
    WorldBuilder b;
    b.pad(Species::Predator, 10);
    b.pad(Species::Prey, 20);
    feed_all(b.world, 30.0);
    b.world.at(AgentId{3}).last_fed = 0.0;
    b.world.at(AgentId{6}).last_fed = 0.0;
    LifecycleParams params;
    EventLog log;
    predator_death_procedure(b.world, params, log);
    CHECK(b.world.at(AgentId{3}).species == Species::Prey);
    CHECK(b.world.at(AgentId{6}).species == Species::Predator);
}

TEST_CASE("prey_sacrifice: refills predators below the floor") {
    WorldBuilder b;
    b.pad(Species::Predator, 6);
    b.pad(Species::Prey, 24, Tag::Plus);
    LifecycleParams params;
    EventLog log;
    CHECK(prey_sacrifice(b.world, params, log));
    CHECK(b.world.count(Species::Predator) == 7);
    CHECK(b.world.count(Species::Prey) == 23);
    REQUIRE(log.size() == 3);
    CHECK(log[0].kind() == EventKind::Sacrifice);
    CHECK(std::get<DeathPayload>(log[1].payload).cause == DeathCause::Sacrificed);
    CHECK(std::get<BirthPayload>(log[2].payload).cause == BirthCause::Sacrifice);

    EventLog none;
    CHECK_FALSE(prey_sacrifice(b.world, params, none));
    CHECK(none.empty());
}

TEST_CASE("prey_sacrifice: victim is uniform over active prey") {
    WorldBuilder b;
    b.pad(Species::Predator, 6);
    b.pad(Species::Prey, 24, Tag::Plus);
    b.world.at(AgentId{6}).active = false;  // never chosen
    const WorldState start = b.world;
    LifecycleParams params;
    RngStreams carried(5);
    std::map<std::uint32_t, int> hits;
    constexpr int kTrials = 23'000;
    for (int i = 0; i < kTrials; ++i) {
        WorldState w = start;
        w.rng = carried;
        EventLog log;
        REQUIRE(prey_sacrifice(w, params, log));
        carried = w.rng;
        ++hits[log[0].agent.value];
    }
    CHECK(hits.count(6) == 0);
    CHECK(hits.size() == 23);
    const double expected = kTrials / 23.0;
    double chi2 = 0.0;
    for (const auto& [id, n] : hits)
        chi2 += (n - expected) * (n - expected) / expected;
    // 22 degrees of freedom; 0.999 quantile is about 48.3
    CHECK(chi2 < 48.3);
}

TEST_CASE("update_spawn_protection") {
    WorldBuilder b;
    b.predator({10.0, 10.0});
    const AgentId close = b.prey({13.0, 10.0}, Tag::Plus, false);
    const AgentId edge = b.prey({15.0, 10.0}, Tag::Plus, false);
    const AgentId far = b.prey({30.0, 30.0}, Tag::Plus, false);
    update_spawn_protection(b.world, 5.0);
    CHECK_FALSE(b.world.at(close).active);
    CHECK(b.world.at(edge).active);
    CHECK(b.world.at(far).active);
}
