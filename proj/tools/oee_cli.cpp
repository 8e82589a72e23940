// Command-line front end: run, replay, metrics, batch.

#include "oee/batch.hpp"
#include "oee/event_log.hpp"
#include "oee/simulation.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Overrides {
    std::optional<double> tick;
    std::optional<double> duration;

    void add_to(CLI::App* cmd) {
        cmd->add_option("--tick", tick, "Override the kinematic tick (seconds)");
        cmd->add_option("--duration", duration, "Override the run duration (seconds)");
    }

    oee::ExperimentConfig apply(oee::ExperimentConfig c) const {
        if (tick)
            c.tick = *tick;
        if (duration)
            c.duration = *duration;
        c.validate();
        return c;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Predator-prey open-ended evolution simulator"};
    app.require_subcommand(1);

    std::string config_path, log_path, out_dir, seeds_text = "auto";
    std::optional<std::uint64_t> seed;
    std::size_t runs = 10;
    std::size_t threads = 0;

    auto* run = app.add_subcommand("run", "Run one experiment");
    run->add_option("--config", config_path, "Config JSON")->required();
    run->add_option("--seed", seed, "Master seed (overrides config)");
    run->add_option("--out", out_dir, "Output directory")->required();
    Overrides run_over;
    run_over.add_to(run);

    auto* rep = app.add_subcommand("replay", "Recompute metrics from a log, checking its config");
    rep->add_option("--log", log_path, "Event log (JSON lines)")->required();
    rep->add_option("--config", config_path, "Config JSON the log was produced with")->required();
    Overrides rep_over;
    rep_over.add_to(rep);

    auto* met = app.add_subcommand("metrics", "Print the metrics CSV of a log");
    met->add_option("--log", log_path, "Event log (JSON lines)")->required();

    auto* bat = app.add_subcommand("batch", "Run repeated experiments");
    bat->add_option("--config", config_path, "Config JSON")->required();
    bat->add_option("--runs", runs, "Number of runs")->check(CLI::PositiveNumber);
    bat->add_option("--seeds", seeds_text, "Comma-separated seeds or 'auto'");
    bat->add_option("--out", out_dir, "Output directory")->required();
    bat->add_option("--threads", threads, "Worker threads (0 = all cores)");
    Overrides bat_over;
    bat_over.add_to(bat);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*run) {
            oee::ExperimentConfig c = run_over.apply(oee::load_config(config_path));
            if (seed)
                c.seed = *seed;
            fs::create_directories(out_dir);
            const oee::RunResult result = oee::run_experiment(c);
            const std::string stem = std::to_string(c.seed);
            const fs::path log_file = fs::path(out_dir) / ("run_" + stem + ".jsonl");
            const fs::path csv_file = fs::path(out_dir) / ("metrics_" + stem + ".csv");
            oee::write_log(log_file, oee::make_header(c, result.log), result.log);
            oee::write_metrics_csv(csv_file, result.metrics.series);
            std::cout << "wrote " << log_file.string() << " and " << csv_file.string() << '\n';
        } else if (*rep) {
            const oee::ExperimentConfig c = rep_over.apply(oee::load_config(config_path));
            oee::write_metrics_csv(std::cout, oee::replay(log_path, c).series);
        } else if (*met) {
            oee::write_metrics_csv(std::cout, oee::replay(log_path).series);
        } else if (*bat) {
            const oee::ExperimentConfig c = bat_over.apply(oee::load_config(config_path));
            oee::BatchOptions options{fs::path(out_dir), threads};
            const auto result = oee::batch(c, runs, oee::parse_seed_list(seeds_text), options);
            oee::write_summary_csv(std::cout, result);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
