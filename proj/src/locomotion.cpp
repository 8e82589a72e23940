#include "oee/locomotion.hpp"

#include <cmath>

namespace oee {

double steering_scale(double alpha) {
    const double a = std::abs(wrap_angle(alpha));
    const double r = (kPi - a) / kPi;
    return r * r;
}

OscillatorOutput oscillator_step(const GaitOscillator& osc, double dt) {
    const double speed = osc.amplitude * (1.0 + std::sin(osc.phase)) / 2.0;
    GaitOscillator next = osc;
    next.phase = std::fmod(osc.phase + osc.angular_frequency * dt, 2.0 * kPi);
    if (next.phase < 0.0)
        next.phase += 2.0 * kPi;
    return {next, speed};
}

Pose step_kinematics(const Pose& pose, double alpha, double base_speed,
                     const SteeringState& steering, double dt) {
    if (base_speed == 0.0)
        return pose;

    const double delta = steering_scale(alpha);
    double left = base_speed;
    double right = base_speed;
    if (alpha >= 0.0)
        right *= delta;
    else
        left *= delta;

    const double forward = (left + right) / 2.0;
    const double turn_rate = (left - right) / steering.track_width;  // clockwise positive

    Pose next;
    next.heading = wrap_angle(pose.heading - turn_rate * dt);
    next.position = pose.position +
                    Vec2{std::cos(next.heading), std::sin(next.heading)} * (forward * dt);
    return next;
}

}  // namespace oee
