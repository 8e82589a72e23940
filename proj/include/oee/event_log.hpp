#pragma once

#include "oee/config.hpp"
#include "oee/events.hpp"

#include <nlohmann/json.hpp>

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>

namespace oee {

/// First line of every log file. The embedded config makes a log
/// self-describing; `config_hash` excludes the seed.
struct LogHeader {
    static constexpr const char* kFormat = "oee-event-log";
    static constexpr int kVersion = 1;

    std::string config_hash;
    std::uint64_t seed = 0;
    std::size_t records = 0;
    ExperimentConfig config;
};

LogHeader make_header(const ExperimentConfig& config, const EventLog& log);

nlohmann::json record_to_json(const EventRecord& r);
/// Throws ValidationError describing the malformed field.
EventRecord record_from_json(const nlohmann::json& j);

/// Writes the header line followed by one JSON object per record.
void write_log(std::ostream& out, const LogHeader& header, const EventLog& log);
void write_log(const std::filesystem::path& path, const LogHeader& header, const EventLog& log);

struct LoadedLog {
    LogHeader header;
    EventLog records;
};

/// Parses and integrity-checks a log: header shape, record count (a short
/// log names its first missing record), and non-decreasing timestamps.
LoadedLog read_log(std::istream& in);
LoadedLog read_log(const std::filesystem::path& path);

}  // namespace oee
