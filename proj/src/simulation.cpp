#include "oee/simulation.hpp"

#include "oee/lifecycle.hpp"
#include "oee/perception.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <deque>
#include <fstream>
#include <ostream>
#include <set>

namespace oee {

namespace {

constexpr double kTimeEps = 1e-6;
constexpr std::string_view kAll = "all";

void control_phase(WorldState& world, const ExperimentConfig& config, EventLog& log) {
    std::vector<ControlDecision> decisions;
    decisions.reserve(world.agents.size());
    for (const Agent& a : world.agents) {
        if (config.controller == ControllerMode::CoinFlip) {
            const double angle = world.rng.control.coin() ? kTargetAngle : -kTargetAngle;
            const Tag tag = world.rng.control.coin() ? Tag::Plus : Tag::Minus;
            decisions.push_back({angle, tag});
        } else {
            decisions.push_back(decide(forward(a.brain, sense(a.id, world))));
        }
    }
    // Tags change only after everyone has sensed the same world.
    for (Agent& a : world.agents) {
        a.decision = decisions[a.id.value];
        const TagState next =
            apply_tag(a.tag_state, a.decision.desired_tag, world.clock, config.tag_cooldown);
        if (next.tag != a.tag_state.tag)
            log.push_back({world.clock, a.id, TagSwitchPayload{next.tag}});
        a.tag_state = next;
    }
}

void kinematics_phase(WorldState& world, const ExperimentConfig& config) {
    const SteeringState steering{0.0, config.track_width};
    for (Agent& a : world.agents) {
        const auto [gait, speed] = oscillator_step(a.gait, config.tick);
        a.gait = gait;
        Pose next = step_kinematics(a.pose, a.decision.target_angle, speed, steering, config.tick);
        next.position = world.arena.clamp(next.position);
        a.pose = next;
    }
}

void sample_phase(const WorldState& world, EventLog& log) {
    for (const Agent& a : world.agents)
        log.push_back({world.clock, a.id,
                       SamplePayload{a.pose.position, nearest_observable_adversary(a.id, world),
                                     a.active}});
}

struct ReplayAgent {
    Species species = Species::Prey;
    Origin origin = Origin::Random;
    std::uint64_t controller = 0;
    Tag tag = Tag::Plus;
};

struct VelocityWindow {
    AgentId agent;
    std::uint64_t controller;
    Species species;
    Origin origin;
    Vec2 p1;
    Vec2 a1;
    double t0;
    double t_close;
};

struct CatchRecord {
    double t;
    bool prey_inherited;
    bool predator_inherited;
    std::uint64_t predator_controller;
};

std::optional<double> mean_of(const std::vector<SeriesPoint>& points, double from = -1.0) {
    double sum = 0.0;
    std::size_t n = 0;
    for (const SeriesPoint& p : points) {
        if (p.t < from)
            continue;
        sum += p.value;
        ++n;
    }
    if (n == 0)
        return std::nullopt;
    return sum / static_cast<double>(n);
}

class LogAnalyzer {
public:
    explicit LogAnalyzer(const ExperimentConfig& config)
        : config_(config), arena_{config.arena_side, config.wall_threshold} {}

    void consume(const EventRecord& r) {
        if (!pending_.empty() && (r.kind() != EventKind::Sample || r.t != pending_t_))
            flush_instant();
        std::visit([&](const auto& p) { handle(r, p); }, r.payload);
    }

    MetricsReport finish() {
        if (!pending_.empty())
            flush_instant();

        MetricsReport report;
        report.series = bucket_series(samples_, config_.velocity_bucket, config_.duration);
        append_attribution(report);
        summarize(report);
        return report;
    }

private:
    void handle(const EventRecord& r, const BirthPayload& p) {
        agents_[r.agent.value] = {p.species, p.origin, p.controller, p.tag};
    }
    void handle(const EventRecord&, const DeathPayload&) {}
    void handle(const EventRecord& r, const CatchPayload& p) {
        const ReplayAgent& pred = agents_[r.agent.value];
        catches_.push_back({r.t, agents_[p.prey.value].origin == Origin::Inherited,
                            pred.origin == Origin::Inherited, pred.controller});
    }
    void handle(const EventRecord& r, const TagSwitchPayload& p) { agents_[r.agent.value].tag = p.tag; }
    void handle(const EventRecord&, const SacrificePayload&) {}
    void handle(const EventRecord&, const GuardPayload&) {}
    void handle(const EventRecord& r, const SamplePayload& p) {
        pending_t_ = r.t;
        pending_.push_back({r.agent, p});
    }

    void emit(double t, std::string_view metric, std::string_view species, std::string_view origin,
              double value) {
        samples_.push_back({t, std::string(metric), std::string(species), std::string(origin), value});
    }

    void flush_instant() {
        const double t = pending_t_;
        std::array<std::optional<Vec2>, kBodyCount> pos{};
        std::vector<BodySnapshot> bodies;
        bodies.reserve(pending_.size());
        for (const auto& [id, s] : pending_) {
            pos[id.value] = s.position;
            const ReplayAgent& a = agents_[id.value];
            bodies.push_back({a.species, a.origin, s.position, a.tag});
        }

        const std::array<std::pair<std::optional<Origin>, std::string_view>, 3> filters = {{
            {std::nullopt, kAll},
            {Origin::Random, to_string(Origin::Random)},
            {Origin::Inherited, to_string(Origin::Inherited)},
        }};
        for (const auto& [filter, label] : filters) {
            const WallRatio w = wall_stuck_ratio(bodies, arena_, filter);
            if (w.prey)
                emit(t, "wall_ratio", to_string(Species::Prey), label, *w.prey);
            if (w.predator)
                emit(t, "wall_ratio", to_string(Species::Predator), label, *w.predator);
        }

        if (const auto sym = tag_symmetry(bodies, t))
            emit(t, "tag_symmetry", kAll, to_string(Origin::Inherited), sym->symmetry);

        while (!windows_.empty() && windows_.front().t_close <= t + kTimeEps) {
            const VelocityWindow& w = windows_.front();
            if (std::abs(w.t_close - t) <= kTimeEps && pos[w.agent.value] &&
                agents_[w.agent.value].controller == w.controller)
                emit(w.t0, "velocity", to_string(w.species), to_string(w.origin),
                     velocity_sample(w.p1, w.a1, *pos[w.agent.value]));
            windows_.pop_front();
        }

        for (const auto& [id, s] : pending_) {
            if (!s.adversary || !pos[s.adversary->value])
                continue;
            const ReplayAgent& a = agents_[id.value];
            windows_.push_back({id, a.controller, a.species, a.origin, s.position,
                                *pos[s.adversary->value], t, t + kVelocityWindow});
        }
        pending_.clear();
    }

    void append_attribution(MetricsReport& report) const {
        const std::size_t n = bucket_count(config_.velocity_bucket, config_.duration);
        AttributionCounters c;
        std::set<std::uint64_t> catchers;
        std::size_t next = 0;
        std::vector<SeriesPoint> prey, pred;
        for (std::size_t b = 0; b < n; ++b) {
            const double end = static_cast<double>(b + 1) * config_.velocity_bucket;
            while (next < catches_.size() && (b + 1 == n || catches_[next].t < end)) {
                const CatchRecord& k = catches_[next++];
                ++c.prey_caught_total;
                c.prey_caught_inherited += k.prey_inherited ? 1 : 0;
                if (catchers.insert(k.predator_controller).second) {
                    ++c.predators_caught_any_total;
                    c.predators_caught_any_inherited += k.predator_inherited ? 1 : 0;
                }
            }
            const Attribution a = attribution(c);
            const double t = static_cast<double>(b) * config_.velocity_bucket;
            if (a.prey)
                prey.push_back({t, "attribution", std::string(to_string(Species::Prey)),
                                std::string(kAll), *a.prey});
            if (a.predator)
                pred.push_back({t, "attribution", std::string(to_string(Species::Predator)),
                                std::string(kAll), *a.predator});
        }
        report.series.points.insert(report.series.points.end(), prey.begin(), prey.end());
        report.series.points.insert(report.series.points.end(), pred.begin(), pred.end());
        report.summary.counters = c;
        report.summary.attribution = attribution(c);
    }

    void summarize(MetricsReport& report) const {
        const MetricsSeries& s = report.series;
        RunSummary& out = report.summary;
        for (std::size_t i = 0; i < 2; ++i) {
            const auto sp = static_cast<Species>(i);
            for (std::size_t j = 0; j < 2; ++j) {
                const auto o = static_cast<Origin>(j);
                const auto pts = s.group("velocity", to_string(sp), to_string(o));
                out.velocity[i][j] = mean_of(pts);
                out.velocity_late[i][j] = mean_of(pts, config_.duration / 2.0);
            }
            out.wall_ratio[i] = mean_of(s.group("wall_ratio", to_string(sp), kAll));
        }
        out.tag_symmetry = mean_of(s.group("tag_symmetry", kAll, to_string(Origin::Inherited)));
    }

    const ExperimentConfig& config_;
    Arena arena_;
    std::array<ReplayAgent, kBodyCount> agents_{};
    std::vector<std::pair<AgentId, SamplePayload>> pending_;
    double pending_t_ = 0.0;
    std::deque<VelocityWindow> windows_;
    std::vector<CatchRecord> catches_;
    std::vector<MetricSample> samples_;
};

}  // namespace

RunResult run_experiment(const ExperimentConfig& config) {
    config.validate();
    const LifecycleParams params = config.lifecycle_params();
    const std::size_t total = config.total_ticks();
    const std::size_t control_every = config.control_ticks();

    RunResult result;
    EventLog& log = result.log;
    log.reserve(total / control_every * (kBodyCount + 2) + 1024);

    WorldState world = init_population(params, config.seed, log);
    std::set<std::uint64_t> catchers;
    AttributionCounters& online = result.online_counters;

    control_phase(world, config, log);
    sample_phase(world, log);

    for (std::size_t n = 1; n <= total; ++n) {
        world.clock = static_cast<double>(n) * config.tick;
        const bool control_instant = n % control_every == 0;

        kinematics_phase(world, config);
        if (control_instant)
            control_phase(world, config, log);

        for (const CatchPair& pair : check_catches(world, config.catch_radius)) {
            const auto outcome = handle_catch(pair, world, params, log);
            if (!outcome)
                continue;
            ++online.prey_caught_total;
            online.prey_caught_inherited += outcome->prey_origin == Origin::Inherited ? 1 : 0;
            if (catchers.insert(outcome->predator_controller).second) {
                ++online.predators_caught_any_total;
                online.predators_caught_any_inherited +=
                    outcome->predator_origin == Origin::Inherited ? 1 : 0;
            }
        }
        while (prey_sacrifice(world, params, log)) {
        }
        // Scheduled times are sums of integers; the clock is a product of ticks.
        if (world.clock + kTimeEps >= world.schedule.next_death_time)
            predator_death_procedure(world, params, log);
        update_spawn_protection(world, config.spawn_safe_distance);

        if (control_instant)
            sample_phase(world, log);
    }

    result.metrics = analyze_log(log, config);
    return result;
}

MetricsReport analyze_log(const EventLog& log, const ExperimentConfig& config) {
    LogAnalyzer analyzer(config);
    for (const EventRecord& r : log)
        analyzer.consume(r);
    return analyzer.finish();
}

MetricsReport replay(const std::filesystem::path& log_path,
                     const std::optional<ExperimentConfig>& config) {
    const LoadedLog loaded = read_log(log_path);
    if (config) {
        const std::string expected = config->parameter_hash();
        if (expected != loaded.header.config_hash)
            throw ValidationError("config does not match log: config hash " + expected +
                                  " vs log hash " + loaded.header.config_hash);
    }
    if (loaded.header.config.parameter_hash() != loaded.header.config_hash)
        throw ValidationError("log header is inconsistent: embedded config hash " +
                              loaded.header.config.parameter_hash() + " vs declared " +
                              loaded.header.config_hash);
    loaded.header.config.validate();
    return analyze_log(loaded.records, loaded.header.config);
}

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void write_metrics_csv(std::ostream& out, const MetricsSeries& series) {
    out << kMetricsCsvHeader << '\n';
    for (const SeriesPoint& p : series.points)
        out << format_number(p.t) << ',' << p.metric << ',' << p.species << ',' << p.origin << ','
            << format_number(p.value) << '\n';
}

void write_metrics_csv(const std::filesystem::path& path, const MetricsSeries& series) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ValidationError("cannot write metrics " + path.string());
    write_metrics_csv(out, series);
}

}  // namespace oee
