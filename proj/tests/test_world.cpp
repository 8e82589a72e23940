#include "oee/world.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace oee;
using oee::testing::WorldBuilder;

TEST_CASE("relative_bearing: examples") {
    const Pose observer{{0.0, 0.0}, 0.0};
    CHECK(relative_bearing(observer, {5.0, 0.0}) == doctest::Approx(0.0));
    // +y is to the left of a +x heading.
    CHECK(relative_bearing(observer, {0.0, 1.0}) == doctest::Approx(-kPi / 2));
    CHECK(relative_bearing(observer, {0.0, -1.0}) == doctest::Approx(kPi / 2));
    CHECK(relative_bearing(observer, {0.0, 0.0}) == 0.0);
    CHECK(relative_bearing(observer, {-3.0, 0.0}) == doctest::Approx(kPi));
}

TEST_CASE("relative_bearing: mirror reflection across the heading axis flips the sign") {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> u(-20.0, 20.0), h(-kPi, kPi);
    for (int i = 0; i < 2000; ++i) {
        const Pose obs{{u(gen), u(gen)}, h(gen)};
        const Vec2 fwd{std::cos(obs.heading), std::sin(obs.heading)};
        const Vec2 side{-fwd.y, fwd.x};
        const double along = u(gen), across = u(gen);
        if (std::abs(across) < 1e-6)
            continue;
        const Vec2 target = obs.position + fwd * along + side * across;
        const Vec2 mirror = obs.position + fwd * along - side * across;
        const double b = relative_bearing(obs, target);
        const double m = relative_bearing(obs, mirror);
        CHECK(std::abs(b) <= kPi);
        CHECK(m == doctest::Approx(-b).epsilon(1e-9));
    }
}

TEST_CASE("distance_to_nearest_wall") {
    const Arena arena{40.0, 1.0};
    CHECK(distance_to_nearest_wall({20.0, 20.0}, arena) == 20.0);
    CHECK(distance_to_nearest_wall({0.5, 20.0}, arena) == 0.5);
    CHECK(distance_to_nearest_wall({40.0, 13.0}, arena) == 0.0);
    CHECK(distance_to_nearest_wall({0.0, 0.0}, arena) == 0.0);
}

TEST_CASE("Arena::clamp keeps points inside") {
    const Arena arena{40.0, 1.0};
    CHECK(arena.clamp({-3.0, 41.0}) == Vec2{0.0, 40.0});
    CHECK(arena.clamp({12.0, 7.0}) == Vec2{12.0, 7.0});
}

TEST_CASE("nearest_observable_adversary: tag visibility beats proximity") {
    WorldBuilder b;
    const AgentId prey = b.prey({20.0, 20.0}, Tag::Plus);
    b.predator({23.0, 20.0}, Tag::Minus);  // distance 3, other tag
    const AgentId far = b.predator({28.0, 20.0}, Tag::Plus);  // distance 8, same tag
    const auto adv = nearest_observable_adversary(prey, b.world);
    REQUIRE(adv);
    CHECK(*adv == far);
}

TEST_CASE("nearest_observable_adversary: none on the same tag") {
    WorldBuilder b;
    const AgentId prey = b.prey({20.0, 20.0}, Tag::Plus);
    b.predator({23.0, 20.0}, Tag::Minus);
    b.predator({10.0, 20.0}, Tag::Minus);
    CHECK_FALSE(nearest_observable_adversary(prey, b.world));
}

TEST_CASE("nearest_observable_adversary: inactive newborn prey are invisible") {
    WorldBuilder b;
    const AgentId pred = b.predator({20.0, 20.0});
    b.prey({21.0, 20.0}, Tag::Plus, /*active=*/false);
    CHECK_FALSE(nearest_observable_adversary(pred, b.world));
}

TEST_CASE("nearest_observable_adversary: ties go to the lowest id") {
    WorldBuilder b;
    const AgentId prey = b.prey({20.0, 20.0});
    const AgentId first = b.predator({22.0, 20.0});
    b.predator({18.0, 20.0});
    CHECK(*nearest_observable_adversary(prey, b.world) == first);
}

TEST_CASE("nearest_observable_adversary: exhaustive check on random worlds") {
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> pos(0.0, 40.0);
    std::bernoulli_distribution coin(0.5);
    for (int trial = 0; trial < 300; ++trial) {
        WorldBuilder b;
        for (int i = 0; i < 30; ++i)
            b.add(coin(gen) ? Species::Prey : Species::Predator, {pos(gen), pos(gen)},
                  coin(gen) ? Tag::Plus : Tag::Minus, coin(gen));
        for (const Agent& self : b.world.agents) {
            const auto adv = nearest_observable_adversary(self.id, b.world);
            double best = INFINITY;
            for (const Agent& o : b.world.agents)
                if (o.species != self.species && o.tag() == self.tag() && o.active)
                    best = std::min(best, distance(self.pose.position, o.pose.position));
            if (!adv) {
                CHECK(std::isinf(best));
                continue;
            }
            const Agent& a = b.world.at(*adv);
            CHECK(a.species != self.species);
            CHECK(a.tag() == self.tag());
            CHECK(a.active);
            CHECK(distance(self.pose.position, a.pose.position) == best);
        }
    }
}

TEST_CASE("death_interval is 25 minus the predator count") {
    CHECK(death_interval(14) == 11.0);
    CHECK(death_interval(7) == 18.0);
    CHECK(death_interval(23) == 2.0);
}
