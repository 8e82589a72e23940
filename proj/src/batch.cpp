#include "oee/batch.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <exception>
#include <fstream>
#include <mutex>
#include <ostream>
#include <set>
#include <string>
#include <thread>

namespace oee {

namespace {

void add_mean(std::optional<double>& out, const std::vector<std::optional<double>>& values) {
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& v : values)
        if (v) {
            sum += *v;
            ++n;
        }
    out = n ? std::optional<double>(sum / static_cast<double>(n)) : std::nullopt;
}

std::string cell(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

void write_row(std::ostream& out, std::string_view run, std::string_view seed, const RunSummary& s,
               double baseline) {
    const auto& c = s.counters;
    out << run << ',' << seed << ',' << c.prey_caught_inherited << ',' << c.prey_caught_total << ','
        << c.predators_caught_any_inherited << ',' << c.predators_caught_any_total << ','
        << cell(s.attribution.prey) << ',' << cell(s.attribution.predator);
    for (std::size_t sp = 0; sp < 2; ++sp)
        for (std::size_t o = 0; o < 2; ++o)
            out << ',' << cell(s.velocity[sp][o]);
    out << ',' << cell(s.wall_ratio[0]) << ',' << cell(s.wall_ratio[1]) << ','
        << cell(s.tag_symmetry) << ',' << format_number(baseline) << '\n';
}

}  // namespace

std::vector<std::uint64_t> parse_seed_list(std::string_view text) {
    if (text == "auto")
        return {};
    std::vector<std::uint64_t> seeds;
    while (true) {
        const auto comma = text.find(',');
        std::string_view item = text.substr(0, comma);
        while (!item.empty() && item.front() == ' ')
            item.remove_prefix(1);
        while (!item.empty() && item.back() == ' ')
            item.remove_suffix(1);
        std::uint64_t v = 0;
        const auto [end, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
        if (item.empty() || ec != std::errc() || end != item.data() + item.size())
            throw ValidationError("invalid seed '" + std::string(item) + "' in seed list");
        seeds.push_back(v);
        if (comma == std::string_view::npos)
            break;
        text.remove_prefix(comma + 1);
    }
    return seeds;
}

RunSummary pool(const std::vector<BatchRun>& runs) {
    RunSummary pooled;
    for (const BatchRun& r : runs)
        pooled.counters += r.summary.counters;
    pooled.attribution = attribution(pooled.counters);

    auto collect = [&](auto field) {
        std::vector<std::optional<double>> v;
        for (const BatchRun& r : runs)
            v.push_back(field(r.summary));
        return v;
    };
    for (std::size_t s = 0; s < 2; ++s) {
        for (std::size_t o = 0; o < 2; ++o) {
            add_mean(pooled.velocity[s][o], collect([&](const RunSummary& x) { return x.velocity[s][o]; }));
            add_mean(pooled.velocity_late[s][o],
                     collect([&](const RunSummary& x) { return x.velocity_late[s][o]; }));
        }
        add_mean(pooled.wall_ratio[s], collect([&](const RunSummary& x) { return x.wall_ratio[s]; }));
    }
    add_mean(pooled.tag_symmetry, collect([](const RunSummary& x) { return x.tag_symmetry; }));
    return pooled;
}

BatchResult batch(const ExperimentConfig& config, std::size_t n_runs,
                  std::vector<std::uint64_t> seeds, const BatchOptions& options) {
    config.validate();
    if (n_runs == 0)
        throw ValidationError("batch needs at least one run");
    if (seeds.empty())
        for (std::size_t i = 0; i < n_runs; ++i)
            seeds.push_back(config.seed + i);
    if (seeds.size() != n_runs)
        throw ValidationError("batch of " + std::to_string(n_runs) + " runs given " +
                              std::to_string(seeds.size()) + " seeds");
    if (std::set<std::uint64_t>(seeds.begin(), seeds.end()).size() != seeds.size())
        throw ValidationError("batch seeds must be distinct");
    if (options.out_dir)
        std::filesystem::create_directories(*options.out_dir);

    BatchResult result;
    result.runs.resize(n_runs);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        for (std::size_t i = next++; i < n_runs; i = next++) {
            try {
                ExperimentConfig c = config;
                c.seed = seeds[i];
                const RunResult run = run_experiment(c);
                if (options.out_dir) {
                    const auto stem = std::to_string(c.seed);
                    write_log(*options.out_dir / ("run_" + stem + ".jsonl"), make_header(c, run.log),
                              run.log);
                    write_metrics_csv(*options.out_dir / ("metrics_" + stem + ".csv"),
                                      run.metrics.series);
                }
                result.runs[i] = {c.seed, run.metrics.summary};
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
            }
        }
    };

    std::size_t threads = options.threads ? options.threads : std::thread::hardware_concurrency();
    threads = std::clamp<std::size_t>(threads, 1, n_runs);
    {
        std::vector<std::jthread> pool;
        for (std::size_t t = 1; t < threads; ++t)
            pool.emplace_back(worker);
        worker();
    }
    if (failure)
        std::rethrow_exception(failure);

    result.pooled = pool(result.runs);
    RngStream baseline_rng(seeds.front(), "symmetry_baseline");
    result.symmetry_baseline = random_symmetry_baseline(100'000, baseline_rng);

    if (options.out_dir) {
        std::ofstream out(*options.out_dir / "summary.csv", std::ios::binary);
        if (!out)
            throw ValidationError("cannot write summary.csv in " + options.out_dir->string());
        write_summary_csv(out, result);
    }
    return result;
}

void write_summary_csv(std::ostream& out, const BatchResult& result) {
    out << "run,seed,prey_caught_inherited,prey_caught_total,predators_caught_any_inherited,"
           "predators_caught_any_total,prey_attribution,predator_attribution,"
           "velocity_prey_random,velocity_prey_inherited,velocity_predator_random,"
           "velocity_predator_inherited,wall_ratio_prey,wall_ratio_predator,tag_symmetry,"
           "tag_symmetry_baseline\n";
    for (std::size_t i = 0; i < result.runs.size(); ++i)
        write_row(out, std::to_string(i), std::to_string(result.runs[i].seed),
                  result.runs[i].summary, result.symmetry_baseline);
    write_row(out, "pooled", "", result.pooled, result.symmetry_baseline);
}

}  // namespace oee
