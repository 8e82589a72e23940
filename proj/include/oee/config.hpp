#pragma once

#include "oee/lifecycle.hpp"

#include <nlohmann/json.hpp>

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>

namespace oee {

/// Raised for any rejected configuration, log, or CLI input. The message is a
/// single line suitable for a diagnostic.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class ControllerMode : std::uint8_t {
    Brain,    // evolved networks steer and tag
    CoinFlip  // fair coin per decision; removes selection pressure
};

struct ExperimentConfig {
    std::uint64_t seed = 1;
    double duration = 6000.0;
    double tick = 0.1;
    double control_period = 2.0;
    double arena_side = 40.0;
    std::size_t initial_prey = 16;
    std::size_t initial_predators = 14;
    double tag_cooldown = 50.0;
    double catch_radius = 1.0;
    double wall_threshold = 1.0;
    double exemption_distance = 5.0;
    double prey_repro_distance = 5.0;
    double spawn_safe_distance = 5.0;
    double mutation_sigma = 0.1;
    std::size_t hidden_units = 4;
    double random_birth_prob = 1.0 / 3.0;
    double oscillator_frequency = 2.0 * kPi;
    double oscillator_amplitude = 2.0;
    double track_width = 1.0;
    double velocity_bucket = 200.0;
    ControllerMode controller = ControllerMode::Brain;

    /// Throws ValidationError naming the first offending field.
    void validate() const;

    std::size_t total_ticks() const;
    std::size_t control_ticks() const;

    LifecycleParams lifecycle_params() const;

    /// Hash of every parameter except the seed; identifies logs that a
    /// config can replay.
    std::string parameter_hash() const;
};

void to_json(nlohmann::json& j, const ExperimentConfig& c);
/// Missing keys keep their defaults; unknown keys are rejected.
void from_json(const nlohmann::json& j, ExperimentConfig& c);

ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace oee
