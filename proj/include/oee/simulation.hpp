#pragma once

#include "oee/config.hpp"
#include "oee/event_log.hpp"
#include "oee/metrics.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace oee {

/// Scalar aggregates of one run (or a pooled batch).
struct RunSummary {
    AttributionCounters counters;
    Attribution attribution;
    /// Mean of bucket points, indexed [species][origin].
    std::optional<double> velocity[2][2];
    /// Same, restricted to buckets starting at or after half the duration.
    std::optional<double> velocity_late[2][2];
    std::optional<double> wall_ratio[2];
    std::optional<double> tag_symmetry;
};

struct MetricsReport {
    MetricsSeries series;
    RunSummary summary;
};

struct RunResult {
    EventLog log;
    MetricsReport metrics;
    /// Counters maintained while simulating; must agree with the log.
    AttributionCounters online_counters;
};

/// Runs one experiment. The per-tick order is fixed: kinematics, decisions on
/// control instants, catches, sacrifices, the death procedure when due, spawn
/// protection, then sampling on control instants. Throws ValidationError for
/// an invalid config before simulating anything.
RunResult run_experiment(const ExperimentConfig& config);

/// Recomputes every metric from an event log without simulating.
MetricsReport analyze_log(const EventLog& log, const ExperimentConfig& config);

/// Reads a log and recomputes its metrics. When `config` is given its
/// parameter hash must match the log header.
MetricsReport replay(const std::filesystem::path& log_path,
                     const std::optional<ExperimentConfig>& config = std::nullopt);

inline constexpr const char* kMetricsCsvHeader = "t,metric,species,origin,value";

void write_metrics_csv(std::ostream& out, const MetricsSeries& series);
void write_metrics_csv(const std::filesystem::path& path, const MetricsSeries& series);

/// Fixed-format double rendering shared by every CSV writer.
std::string format_number(double v);

}  // namespace oee
