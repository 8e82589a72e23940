#include "oee/batch.hpp"
#include "oee/locomotion.hpp"
#include "oee/simulation.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <nlohmann/json.hpp>

namespace py = pybind11;
using namespace oee;

namespace {

// Configs cross the boundary as JSON text so Python sees the same schema as the CLI.
ExperimentConfig parse_config(const std::string& text) {
    return nlohmann::json::parse(text).get<ExperimentConfig>();
}

py::object opt(const std::optional<double>& v) {
    return v ? py::object(py::float_(*v)) : py::object(py::none());
}

py::dict counters_dict(const AttributionCounters& c) {
    py::dict d;
    d["prey_caught_inherited"] = c.prey_caught_inherited;
    d["prey_caught_total"] = c.prey_caught_total;
    d["predators_caught_any_inherited"] = c.predators_caught_any_inherited;
    d["predators_caught_any_total"] = c.predators_caught_any_total;
    return d;
}

py::dict summary_dict(const RunSummary& s) {
    py::dict d = counters_dict(s.counters);
    d["prey_attribution"] = opt(s.attribution.prey);
    d["predator_attribution"] = opt(s.attribution.predator);
    for (std::size_t sp = 0; sp < 2; ++sp)
        for (std::size_t o = 0; o < 2; ++o) {
            const std::string key = std::string(to_string(static_cast<Species>(sp))) + "_" +
                                    std::string(to_string(static_cast<Origin>(o)));
            d[("velocity_" + key).c_str()] = opt(s.velocity[sp][o]);
            d[("velocity_late_" + key).c_str()] = opt(s.velocity_late[sp][o]);
        }
    d["wall_ratio_prey"] = opt(s.wall_ratio[0]);
    d["wall_ratio_predator"] = opt(s.wall_ratio[1]);
    d["tag_symmetry"] = opt(s.tag_symmetry);
    return d;
}

py::list series_list(const MetricsSeries& series) {
    py::list out;
    for (const SeriesPoint& p : series.points)
        out.append(py::make_tuple(p.t, p.metric, p.species, p.origin, p.value));
    return out;
}

py::dict report_dict(const MetricsReport& r) {
    py::dict d;
    d["summary"] = summary_dict(r.summary);
    d["series"] = series_list(r.series);
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Native core of the oee_sim package";

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);

    m.def("steering_scale", &steering_scale, py::arg("alpha"));
    m.def("death_interval", &death_interval, py::arg("predators"));
    m.def(
        "random_symmetry_baseline",
        [](std::size_t n_pairs, std::uint64_t seed) {
            RngStream rng(seed, "symmetry_baseline");
            return random_symmetry_baseline(n_pairs, rng);
        },
        py::arg("n_pairs"), py::arg("seed") = 1);
    m.def(
        "attribution",
        [](std::uint64_t prey_inherited, std::uint64_t prey_total, std::uint64_t pred_inherited,
           std::uint64_t pred_total) {
            const Attribution a =
                attribution({prey_inherited, prey_total, pred_inherited, pred_total});
            return py::make_tuple(opt(a.prey), opt(a.predator));
        },
        py::arg("prey_caught_inherited"), py::arg("prey_caught_total"),
        py::arg("predators_caught_any_inherited"), py::arg("predators_caught_any_total"));

    m.def("default_config_json", [] { return nlohmann::json(ExperimentConfig{}).dump(); });
    m.def("config_hash", [](const std::string& text) { return parse_config(text).parameter_hash(); },
          py::arg("config_json"));

    m.def(
        "run",
        [](const std::string& text, const std::optional<std::filesystem::path>& out_dir) {
            const ExperimentConfig c = parse_config(text);
            RunResult r;
            {
                py::gil_scoped_release release;
                r = run_experiment(c);
                if (out_dir) {
                    std::filesystem::create_directories(*out_dir);
                    const std::string stem = std::to_string(c.seed);
                    write_log(*out_dir / ("run_" + stem + ".jsonl"), make_header(c, r.log), r.log);
                    write_metrics_csv(*out_dir / ("metrics_" + stem + ".csv"), r.metrics.series);
                }
            }
            py::dict d = report_dict(r.metrics);
            d["records"] = r.log.size();
            return d;
        },
        py::arg("config_json"), py::arg("out_dir") = py::none());

    m.def(
        "replay",
        [](const std::filesystem::path& log, const std::optional<std::string>& text) {
            std::optional<ExperimentConfig> c;
            if (text)
                c = parse_config(*text);
            return report_dict(replay(log, c));
        },
        py::arg("log_path"), py::arg("config_json") = py::none());

    m.def(
        "batch",
        [](const std::string& text, std::size_t n_runs, std::vector<std::uint64_t> seeds,
           const std::optional<std::filesystem::path>& out_dir, std::size_t threads) {
            const ExperimentConfig c = parse_config(text);
            BatchResult b;
            {
                py::gil_scoped_release release;
                b = batch(c, n_runs, std::move(seeds), {out_dir, threads});
            }
            py::dict d;
            py::list runs;
            for (const BatchRun& r : b.runs) {
                py::dict row = summary_dict(r.summary);
                row["seed"] = r.seed;
                runs.append(row);
            }
            d["runs"] = runs;
            d["pooled"] = summary_dict(b.pooled);
            d["symmetry_baseline"] = b.symmetry_baseline;
            return d;
        },
        py::arg("config_json"), py::arg("n_runs"), py::arg("seeds") = std::vector<std::uint64_t>{},
        py::arg("out_dir") = py::none(), py::arg("threads") = 0);
}
