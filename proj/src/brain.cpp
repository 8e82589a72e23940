#include "oee/brain.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace oee {

BrainGenotype::BrainGenotype(Topology topology, std::vector<double> weights, Origin origin)
    : topology_(topology), weights_(std::move(weights)), origin_(origin) {
    if (topology_.inputs != 3 || topology_.outputs != 2 || topology_.hidden == 0)
        throw std::invalid_argument("brain topology must be 3 inputs, >=1 hidden, 2 outputs");
    if (weights_.size() != topology_.parameter_count())
        throw std::invalid_argument("brain genotype has " + std::to_string(weights_.size()) +
                                    " parameters, expected " +
                                    std::to_string(topology_.parameter_count()));
}

RawOutputs forward(const BrainGenotype& brain, const PerceptionInputs& inputs) {
    const Topology& topo = brain.topology();
    const auto w = brain.weights();
    const std::array<double, 3> in{inputs.angle, inputs.distance, inputs.tag_ratio};

    const std::size_t hidden_bias = topo.inputs * topo.hidden;
    const std::size_t out_weights = hidden_bias + topo.hidden;
    const std::size_t out_bias = out_weights + topo.hidden * topo.outputs;

    std::vector<double> hidden(topo.hidden);
    for (std::size_t h = 0; h < topo.hidden; ++h) {
        double acc = w[hidden_bias + h];
        for (std::size_t i = 0; i < topo.inputs; ++i)
            acc += w[h * topo.inputs + i] * in[i];
        hidden[h] = std::tanh(acc);
    }

    std::array<double, 2> out{};
    for (std::size_t o = 0; o < topo.outputs; ++o) {
        double acc = w[out_bias + o];
        for (std::size_t h = 0; h < topo.hidden; ++h)
            acc += w[out_weights + o * topo.hidden + h] * hidden[h];
        out[o] = std::tanh(acc);
    }
    return {out[0], out[1]};
}

ControlDecision decide(RawOutputs raw) {
    return {raw.angle >= 0.0 ? kTargetAngle : -kTargetAngle, tag_from_sign(raw.tag)};
}

TagState apply_tag(const TagState& state, Tag desired, double now, double cooldown) {
    if (desired == state.tag || now - state.last_switch_time < cooldown)
        return state;
    return {desired, now};
}

BrainGenotype mutate(const BrainGenotype& parent, double sigma, RngStream& rng) {
    std::vector<double> w(parent.weights().begin(), parent.weights().end());
    for (double& x : w)
        x += rng.normal(sigma);
    return {parent.topology(), std::move(w), Origin::Inherited};
}

BrainGenotype random_genotype(Topology topology, RngStream& rng) {
    std::vector<double> w(topology.parameter_count());
    for (double& x : w)
        x = rng.uniform(-1.0, 1.0);
    return {topology, std::move(w), Origin::Random};
}

}  // namespace oee
