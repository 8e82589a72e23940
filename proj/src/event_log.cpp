#include "oee/event_log.hpp"

#include <array>
#include <fstream>
#include <istream>
#include <ostream>

namespace oee {

using nlohmann::json;

namespace {

constexpr std::array<std::string_view, 7> kKindNames = {
    "birth", "death", "catch", "tag_switch", "sacrifice", "guard", "sample"};
constexpr std::array<std::string_view, 5> kBirthCauseNames = {
    "init", "catch", "predator_death", "refill", "sacrifice"};
constexpr std::array<std::string_view, 3> kDeathCauseNames = {"caught", "hunger", "sacrificed"};
constexpr std::array<std::string_view, 3> kGuardNames = {"prey_floor", "predator_floor",
                                                         "all_exempt"};

template <typename Enum, std::size_t N>
Enum parse_enum(const json& j, const std::array<std::string_view, N>& names, const char* what) {
    const auto s = j.get<std::string>();
    for (std::size_t i = 0; i < N; ++i)
        if (names[i] == s)
            return static_cast<Enum>(i);
    throw ValidationError(std::string("unknown ") + what + " '" + s + "'");
}

Species parse_species(const json& j) {
    const auto s = j.get<std::string>();
    if (s == "prey")
        return Species::Prey;
    if (s == "predator")
        return Species::Predator;
    throw ValidationError("unknown species '" + s + "'");
}

Origin parse_origin(const json& j) {
    const auto s = j.get<std::string>();
    if (s == "random")
        return Origin::Random;
    if (s == "inherited")
        return Origin::Inherited;
    throw ValidationError("unknown origin '" + s + "'");
}

Tag parse_tag(const json& j) {
    const int v = j.get<int>();
    if (v != 1 && v != -1)
        throw ValidationError("tag must be -1 or 1");
    return v > 0 ? Tag::Plus : Tag::Minus;
}

AgentId parse_agent(const json& j) {
    const auto v = j.get<std::uint32_t>();
    if (v >= kBodyCount)
        throw ValidationError("agent id " + std::to_string(v) + " out of range");
    return AgentId{v};
}

json optional_agent(const std::optional<AgentId>& id) {
    return id ? json(id->value) : json(nullptr);
}

std::optional<AgentId> parse_optional_agent(const json& j) {
    if (j.is_null())
        return std::nullopt;
    return parse_agent(j);
}

struct PayloadWriter {
    json operator()(const BirthPayload& p) const {
        return {{"species", to_string(p.species)},
                {"origin", to_string(p.origin)},
                {"cause", to_string(p.cause)},
                {"parent", optional_agent(p.parent)},
                {"controller", p.controller},
                {"tag", tag_value(p.tag)},
                {"topology", {{"inputs", 3}, {"hidden", p.hidden}, {"outputs", 2}}},
                {"genotype", p.genotype}};
    }
    json operator()(const DeathPayload& p) const {
        return {{"species", to_string(p.species)},
                {"cause", to_string(p.cause)},
                {"controller", p.controller},
                {"hunger", p.hunger}};
    }
    json operator()(const CatchPayload& p) const {
        return {{"prey", p.prey.value}, {"distance", p.distance}};
    }
    json operator()(const TagSwitchPayload& p) const { return {{"tag", tag_value(p.tag)}}; }
    json operator()(const SacrificePayload&) const { return json::object(); }
    json operator()(const GuardPayload& p) const {
        return {{"reason", to_string(p.reason)}, {"other", optional_agent(p.other)}};
    }
    json operator()(const SamplePayload& p) const {
        return {{"x", p.position.x},
                {"y", p.position.y},
                {"adversary", optional_agent(p.adversary)},
                {"active", p.active}};
    }
};

EventPayload parse_payload(EventKind kind, const json& p) {
    switch (kind) {
    case EventKind::Birth: {
        BirthPayload b;
        b.species = parse_species(p.at("species"));
        b.origin = parse_origin(p.at("origin"));
        b.cause = parse_enum<BirthCause>(p.at("cause"), kBirthCauseNames, "birth cause");
        b.parent = parse_optional_agent(p.at("parent"));
        b.controller = p.at("controller").get<std::uint64_t>();
        b.tag = parse_tag(p.at("tag"));
        b.hidden = p.at("topology").at("hidden").get<std::size_t>();
        b.genotype = p.at("genotype").get<std::vector<double>>();
        return b;
    }
    case EventKind::Death:
        return DeathPayload{parse_species(p.at("species")),
                            parse_enum<DeathCause>(p.at("cause"), kDeathCauseNames, "death cause"),
                            p.at("controller").get<std::uint64_t>(), p.at("hunger").get<double>()};
    case EventKind::Catch:
        return CatchPayload{parse_agent(p.at("prey")), p.at("distance").get<double>()};
    case EventKind::TagSwitch:
        return TagSwitchPayload{parse_tag(p.at("tag"))};
    case EventKind::Sacrifice:
        return SacrificePayload{};
    case EventKind::Guard:
        return GuardPayload{parse_enum<GuardReason>(p.at("reason"), kGuardNames, "guard reason"),
                            parse_optional_agent(p.at("other"))};
    case EventKind::Sample:
        return SamplePayload{{p.at("x").get<double>(), p.at("y").get<double>()},
                             parse_optional_agent(p.at("adversary")),
                             p.at("active").get<bool>()};
    }
    throw ValidationError("unhandled event kind");
}

json header_to_json(const LogHeader& h) {
    return {{"format", LogHeader::kFormat}, {"version", LogHeader::kVersion},
            {"config_hash", h.config_hash}, {"seed", h.seed},
            {"records", h.records},         {"config", h.config}};
}

}  // namespace

std::string_view to_string(EventKind k) { return kKindNames.at(static_cast<std::size_t>(k)); }
std::string_view to_string(BirthCause c) { return kBirthCauseNames.at(static_cast<std::size_t>(c)); }
std::string_view to_string(DeathCause c) { return kDeathCauseNames.at(static_cast<std::size_t>(c)); }
std::string_view to_string(GuardReason r) { return kGuardNames.at(static_cast<std::size_t>(r)); }

LogHeader make_header(const ExperimentConfig& config, const EventLog& log) {
    return {config.parameter_hash(), config.seed, log.size(), config};
}

json record_to_json(const EventRecord& r) {
    return {{"t", r.t},
            {"kind", to_string(r.kind())},
            {"agent", r.agent.value},
            {"payload", std::visit(PayloadWriter{}, r.payload)}};
}

EventRecord record_from_json(const json& j) {
    try {
        EventRecord r;
        r.t = j.at("t").get<double>();
        r.agent = parse_agent(j.at("agent"));
        const auto kind = parse_enum<EventKind>(j.at("kind"), kKindNames, "event kind");
        r.payload = parse_payload(kind, j.at("payload"));
        return r;
    } catch (const json::exception& e) {
        throw ValidationError(std::string("malformed record: ") + e.what());
    }
}

void write_log(std::ostream& out, const LogHeader& header, const EventLog& log) {
    out << header_to_json(header).dump() << '\n';
    for (const EventRecord& r : log)
        out << record_to_json(r).dump() << '\n';
}

void write_log(const std::filesystem::path& path, const LogHeader& header, const EventLog& log) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ValidationError("cannot write log " + path.string());
    write_log(out, header, log);
    if (!out)
        throw ValidationError("failed writing log " + path.string());
}

LoadedLog read_log(std::istream& in) {
    LoadedLog loaded;
    std::string line;
    if (!std::getline(in, line))
        throw ValidationError("log is empty: missing header line");

    try {
        const json h = json::parse(line);
        if (h.at("format") != LogHeader::kFormat || h.at("version") != LogHeader::kVersion)
            throw ValidationError("log header has an unsupported format or version");
        loaded.header.config_hash = h.at("config_hash").get<std::string>();
        loaded.header.seed = h.at("seed").get<std::uint64_t>();
        loaded.header.records = h.at("records").get<std::size_t>();
        loaded.header.config = h.at("config").get<ExperimentConfig>();
    } catch (const json::exception& e) {
        throw ValidationError(std::string("malformed log header: ") + e.what());
    }

    loaded.records.reserve(loaded.header.records);
    std::size_t index = 0;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        if (index >= loaded.header.records)
            throw ValidationError("log has more records than the " +
                                  std::to_string(loaded.header.records) + " declared in its header");
        EventRecord r;
        try {
            r = record_from_json(json::parse(line));
        } catch (const json::exception& e) {
            throw ValidationError("record #" + std::to_string(index) + " is not valid JSON: " +
                                  e.what());
        } catch (const ValidationError& e) {
            throw ValidationError("record #" + std::to_string(index) + ": " + e.what());
        }
        if (!loaded.records.empty() && r.t < loaded.records.back().t)
            throw ValidationError("record #" + std::to_string(index) + " at t=" +
                                  std::to_string(r.t) + " precedes record #" +
                                  std::to_string(index - 1) + " at t=" +
                                  std::to_string(loaded.records.back().t));
        loaded.records.push_back(std::move(r));
        ++index;
    }
    if (index < loaded.header.records)
        throw ValidationError("log truncated: first missing record is #" + std::to_string(index) +
                              " of " + std::to_string(loaded.header.records));
    return loaded;
}

LoadedLog read_log(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ValidationError("cannot open log " + path.string());
    return read_log(in);
}

}  // namespace oee
