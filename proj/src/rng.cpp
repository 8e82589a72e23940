#include "oee/rng.hpp"

#include "oee/hash.hpp"

namespace oee {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master_seed, std::string_view name) {
    return splitmix64(master_seed ^ splitmix64(fnv1a64(name)));
}

RngStream::RngStream(std::uint64_t master_seed, std::string_view name)
    : engine_(derive_seed(master_seed, name)) {}

double RngStream::uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
}

double RngStream::normal(double sigma) {
    if (sigma == 0.0)
        return 0.0;
    return std::normal_distribution<double>(0.0, sigma)(engine_);
}

bool RngStream::bernoulli(double p) {
    return std::bernoulli_distribution(p)(engine_);
}

std::size_t RngStream::index(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
}

RngStreams::RngStreams(std::uint64_t master_seed)
    : init(master_seed, "init"),
      mutation(master_seed, "mutation"),
      reproduction(master_seed, "reproduction"),
      sacrifice(master_seed, "sacrifice"),
      control(master_seed, "control") {}

}  // namespace oee
