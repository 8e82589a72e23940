#pragma once

#include "oee/rng.hpp"
#include "oee/types.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace oee {

struct Topology {
    std::size_t inputs = 3;
    std::size_t hidden = 4;
    std::size_t outputs = 2;

    /// Weights plus one bias per hidden and output neuron.
    constexpr std::size_t parameter_count() const {
        return inputs * hidden + hidden + hidden * outputs + outputs;
    }

    friend bool operator==(const Topology&, const Topology&) = default;
};

/// Fixed-topology network parameters, the unit of evolution.
///
/// Layout of `weights`: input->hidden matrix (hidden rows of `inputs`), hidden
/// biases, hidden->output matrix (output rows of `hidden`), output biases.
class BrainGenotype {
public:
    BrainGenotype(Topology topology, std::vector<double> weights, Origin origin);

    const Topology& topology() const { return topology_; }
    std::span<const double> weights() const { return weights_; }
    Origin origin() const { return origin_; }

    friend bool operator==(const BrainGenotype&, const BrainGenotype&) = default;

private:
    Topology topology_;
    std::vector<double> weights_;
    Origin origin_;
};

struct PerceptionInputs {
    double angle = 1.0;     // -1 adversary on the left, +1 on the right
    double distance = 1.0;  // normalised by the arena diagonal
    double tag_ratio = 0.0;
};

struct RawOutputs {
    double angle = 0.0;
    double tag = 0.0;
};

inline constexpr double kTargetAngle = 0.7;

struct ControlDecision {
    double target_angle = kTargetAngle;
    Tag desired_tag = Tag::Plus;

    friend bool operator==(const ControlDecision&, const ControlDecision&) = default;
};

struct TagState {
    Tag tag = Tag::Plus;
    double last_switch_time = 0.0;

    friend bool operator==(const TagState&, const TagState&) = default;
};

inline constexpr double kDefaultTagCooldown = 50.0;

/// tanh feed-forward pass over one hidden layer.
RawOutputs forward(const BrainGenotype& brain, const PerceptionInputs& inputs);

/// Sign decoding; exact zeros map to the positive branch.
ControlDecision decide(RawOutputs raw);

/// Switches the tag only when it differs and the cooldown has elapsed.
TagState apply_tag(const TagState& state, Tag desired, double now,
                   double cooldown = kDefaultTagCooldown);

/// Gaussian perturbation of every parameter; the child is always Inherited.
BrainGenotype mutate(const BrainGenotype& parent, double sigma, RngStream& rng);

/// Every parameter drawn from U(-1, 1); origin Random.
BrainGenotype random_genotype(Topology topology, RngStream& rng);

}  // namespace oee
