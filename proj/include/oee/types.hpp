#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <numbers>
#include <string_view>

namespace oee {

inline constexpr double kPi = std::numbers::pi;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Vec2 operator*(Vec2 a, double s) { return {a.x * s, a.y * s}; }
    friend bool operator==(Vec2, Vec2) = default;
};

inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }
inline double distance(Vec2 a, Vec2 b) { return norm(a - b); }

/// Wraps an angle into (-pi, pi].
inline double wrap_angle(double a) {
    if (a > -kPi && a <= kPi)
        return a;
    a = std::remainder(a, 2.0 * kPi);
    if (a <= -kPi)
        a += 2.0 * kPi;
    return a;
}

/// Heading is measured counter-clockwise from +x, so a clockwise turn is a turn to the right.
struct Pose {
    Vec2 position;
    double heading = 0.0;

    friend bool operator==(const Pose&, const Pose&) = default;
};

/// Index of one of the fixed body avatars.
struct AgentId {
    std::uint32_t value = 0;

    friend auto operator<=>(AgentId, AgentId) = default;
};

enum class Species : std::uint8_t { Prey, Predator };
enum class Origin : std::uint8_t { Random, Inherited };

inline constexpr Species opposite(Species s) {
    return s == Species::Prey ? Species::Predator : Species::Prey;
}

inline constexpr std::string_view to_string(Species s) {
    return s == Species::Prey ? "prey" : "predator";
}

inline constexpr std::string_view to_string(Origin o) {
    return o == Origin::Random ? "random" : "inherited";
}

/// Perception tag. Agents only see opposite-species agents carrying the same tag.
enum class Tag : std::int8_t { Minus = -1, Plus = 1 };

inline constexpr int tag_value(Tag t) { return static_cast<int>(t); }
inline constexpr Tag tag_from_sign(double v) { return v >= 0.0 ? Tag::Plus : Tag::Minus; }

}  // namespace oee
