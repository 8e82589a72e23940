#pragma once

#include "oee/config.hpp"
#include "oee/simulation.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

namespace oee {

struct BatchRun {
    std::uint64_t seed = 0;
    RunSummary summary;
};

struct BatchResult {
    std::vector<BatchRun> runs;
    /// Counters summed across runs; every other field is the mean of per-run values.
    RunSummary pooled;
    double symmetry_baseline = 0.0;
};

struct BatchOptions {
    /// When set, each run writes run_<seed>.jsonl and metrics_<seed>.csv here,
    /// and the batch writes summary.csv.
    std::optional<std::filesystem::path> out_dir;
    /// Worker threads; 0 uses the hardware concurrency.
    std::size_t threads = 0;
};

/// `seeds` is either empty (derive config.seed, config.seed + 1, ...) or
/// holds exactly `n_runs` distinct values.
BatchResult batch(const ExperimentConfig& config, std::size_t n_runs,
                  std::vector<std::uint64_t> seeds, const BatchOptions& options = {});

/// Parses "auto" (returns empty) or a comma-separated list of integers.
std::vector<std::uint64_t> parse_seed_list(std::string_view text);

RunSummary pool(const std::vector<BatchRun>& runs);

void write_summary_csv(std::ostream& out, const BatchResult& result);

}  // namespace oee
