#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>

namespace oee {

/// One named, independently seeded random stream.
///
/// Streams are derived from a master seed and a stream name, so adding a new
/// consumer with its own name never shifts the draws seen by existing ones.
class RngStream {
public:
    RngStream() = default;
    RngStream(std::uint64_t master_seed, std::string_view name);

    double uniform(double lo, double hi);
    double normal(double sigma);
    bool bernoulli(double p);
    /// Uniform index in [0, n). n must be positive.
    std::size_t index(std::size_t n);
    bool coin() { return bernoulli(0.5); }

    std::mt19937_64& engine() { return engine_; }

    friend bool operator==(const RngStream&, const RngStream&) = default;

private:
    std::mt19937_64 engine_;
};

std::uint64_t derive_seed(std::uint64_t master_seed, std::string_view name);

/// The per-concern streams used by one simulation run.
struct RngStreams {
    RngStream init;
    RngStream mutation;
    RngStream reproduction;
    RngStream sacrifice;
    RngStream control;

    explicit RngStreams(std::uint64_t master_seed);
    RngStreams() = default;
};

}  // namespace oee
