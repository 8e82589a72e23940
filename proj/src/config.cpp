#include "oee/config.hpp"

#include "oee/hash.hpp"
#include "oee/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>

namespace oee {

namespace {

std::size_t ticks_for(double span, double tick, const char* field) {
    const double ratio = span / tick;
    const double rounded = std::round(ratio);
    if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-6)
        throw ValidationError(std::string(field) + " must be a positive multiple of tick");
    return static_cast<std::size_t>(rounded);
}

void require(bool ok, const std::string& message) {
    if (!ok)
        throw ValidationError(message);
}

void require_positive(double v, const char* field) {
    require(std::isfinite(v) && v > 0.0, std::string(field) + " must be a positive number");
}

void require_non_negative(double v, const char* field) {
    require(std::isfinite(v) && v >= 0.0, std::string(field) + " must be a non-negative number");
}

}  // namespace

void ExperimentConfig::validate() const {
    require(initial_prey + initial_predators == kBodyCount,
            "initial_prey + initial_predators must equal 30");
    require(initial_prey >= kSpeciesFloor && initial_predators >= kSpeciesFloor,
            "initial_prey and initial_predators must each be at least 7");
    require_positive(duration, "duration");
    require_positive(tick, "tick");
    require_positive(control_period, "control_period");
    require_positive(arena_side, "arena_side");
    require_non_negative(tag_cooldown, "tag_cooldown");
    require_positive(catch_radius, "catch_radius");
    require_non_negative(wall_threshold, "wall_threshold");
    require_non_negative(exemption_distance, "exemption_distance");
    require_non_negative(prey_repro_distance, "prey_repro_distance");
    require_non_negative(spawn_safe_distance, "spawn_safe_distance");
    require_non_negative(mutation_sigma, "mutation_sigma");
    require(hidden_units >= 1 && hidden_units <= 1024, "hidden_units must be within [1, 1024]");
    require(std::isfinite(random_birth_prob) && random_birth_prob >= 0.0 && random_birth_prob <= 1.0,
            "random_birth_prob must be within [0, 1]");
    require_non_negative(oscillator_frequency, "oscillator_frequency");
    require_non_negative(oscillator_amplitude, "oscillator_amplitude");
    require_positive(track_width, "track_width");
    require_positive(velocity_bucket, "velocity_bucket");

    ticks_for(duration, tick, "duration");
    const std::size_t control = ticks_for(control_period, tick, "control_period");
    const std::size_t window = ticks_for(kVelocityWindow, tick, "velocity window (12 s)");
    require(window % control == 0, "control_period must divide the 12 s velocity window");
}

std::size_t ExperimentConfig::total_ticks() const { return ticks_for(duration, tick, "duration"); }

std::size_t ExperimentConfig::control_ticks() const {
    return ticks_for(control_period, tick, "control_period");
}

LifecycleParams ExperimentConfig::lifecycle_params() const {
    LifecycleParams p;
    p.arena_side = arena_side;
    p.wall_threshold = wall_threshold;
    p.initial_prey = initial_prey;
    p.initial_predators = initial_predators;
    p.catch_radius = catch_radius;
    p.exemption_distance = exemption_distance;
    p.prey_repro_distance = prey_repro_distance;
    p.spawn_safe_distance = spawn_safe_distance;
    p.mutation_sigma = mutation_sigma;
    p.random_birth_prob = random_birth_prob;
    p.tag_cooldown = tag_cooldown;
    p.topology = Topology{3, hidden_units, 2};
    p.gait = GaitOscillator{0.0, oscillator_frequency, oscillator_amplitude};
    return p;
}

std::string ExperimentConfig::parameter_hash() const {
    nlohmann::json j = *this;
    j.erase("seed");
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(j.dump())));
    return buf;
}

NLOHMANN_JSON_SERIALIZE_ENUM(ControllerMode, {
    {ControllerMode::Brain, "brain"},
    {ControllerMode::CoinFlip, "coin_flip"},
})

#define OEE_CONFIG_FIELDS(X)                                                                     \
    X(seed) X(duration) X(tick) X(control_period) X(arena_side) X(initial_prey)                  \
    X(initial_predators) X(tag_cooldown) X(catch_radius) X(wall_threshold)                      \
    X(exemption_distance) X(prey_repro_distance) X(spawn_safe_distance) X(mutation_sigma)        \
    X(hidden_units) X(random_birth_prob) X(oscillator_frequency) X(oscillator_amplitude)         \
    X(track_width) X(velocity_bucket) X(controller)

void to_json(nlohmann::json& j, const ExperimentConfig& c) {
    j = nlohmann::json::object();
#define OEE_WRITE(name) j[#name] = c.name;
    OEE_CONFIG_FIELDS(OEE_WRITE)
#undef OEE_WRITE
}

void from_json(const nlohmann::json& j, ExperimentConfig& c) {
    if (!j.is_object())
        throw ValidationError("config must be a JSON object");

    static const std::set<std::string> known = {
#define OEE_NAME(name) #name,
        OEE_CONFIG_FIELDS(OEE_NAME)
#undef OEE_NAME
    };
    for (const auto& [key, _] : j.items())
        if (!known.contains(key))
            throw ValidationError("unknown config key '" + key + "'");

    try {
#define OEE_READ(name) \
    if (j.contains(#name)) j.at(#name).get_to(c.name);
        OEE_CONFIG_FIELDS(OEE_READ)
#undef OEE_READ
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("bad config value: ") + e.what());
    }
    if (j.contains("controller") && !j.at("controller").is_string())
        throw ValidationError("controller must be \"brain\" or \"coin_flip\"");
    if (j.contains("controller") && j.at("controller") != "brain" && j.at("controller") != "coin_flip")
        throw ValidationError("controller must be \"brain\" or \"coin_flip\"");
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw ValidationError("cannot open config file " + path.string());
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError("config " + path.string() + " is not valid JSON: " + e.what());
    }
    ExperimentConfig c = j.get<ExperimentConfig>();
    c.validate();
    return c;
}

}  // namespace oee
