#pragma once

#include "oee/types.hpp"

namespace oee {

/// Rhythmic forward-speed generator shared (as independent copies) by every body.
struct GaitOscillator {
    double phase = 0.0;              // radians, [0, 2pi)
    double angular_frequency = 2.0 * kPi;
    double amplitude = 2.0;          // peak forward speed, units/s

    friend bool operator==(const GaitOscillator&, const GaitOscillator&) = default;
};

struct SteeringState {
    double alpha = 0.0;        // target angle; positive means "go right"
    double track_width = 1.0;  // lateral separation of the two virtual sides
};

struct OscillatorOutput {
    GaitOscillator next;
    double base_speed = 0.0;
};

/// Side-speed scaling factor ((pi - |alpha|) / pi)^2 applied to the inner side.
double steering_scale(double alpha);

/// Advances the oscillator by dt. The returned speed is sampled at the phase
/// the step starts from and held over the step.
OscillatorOutput oscillator_step(const GaitOscillator& osc, double dt);

/// Differential-speed update. Positive alpha slows the right side, which turns
/// the body clockwise. The position is not clamped here.
Pose step_kinematics(const Pose& pose, double alpha, double base_speed,
                     const SteeringState& steering, double dt);

}  // namespace oee
