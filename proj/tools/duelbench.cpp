// Command-line front end: run experiments, generate datasets, validate
// matrices, evaluate bounds, summarize traces and render plots.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "duelbench/duelbench.hpp"

namespace fs = std::filesystem;
using namespace duelbench;

namespace {

enum class LogLevel { Error = 0, Info = 1, Debug = 2 };

LogLevel log_level() {
  static const LogLevel level = [] {
    const char* env = std::getenv("DUELBENCH_LOG");
    if (!env) return LogLevel::Info;
    const std::string value = env;
    if (value == "error") return LogLevel::Error;
    if (value == "debug") return LogLevel::Debug;
    return LogLevel::Info;
  }();
  return level;
}

void log_info(const std::string& message) {
  if (log_level() >= LogLevel::Info) std::cerr << "info: " << message << "\n";
}

void log_debug(const std::string& message) {
  if (log_level() >= LogLevel::Debug) std::cerr << "debug: " << message << "\n";
}

[[noreturn]] void fail(int code, const std::string& category, const std::string& message) {
  std::cerr << "ERROR: " << category << ": " << message << "\n";
  std::exit(code);
}

int cmd_run(const std::string& config_path, const std::string& out_dir, int jobs,
            bool force) {
  json config_json;
  RunConfig config;
  try {
    config_json = detail::parse_json(read_file(config_path), config_path);
    config = run_config_from_json(config_json);
  } catch (const std::exception& e) {
    fail(2, "config", e.what());
  }
  if (jobs > 0) config.parallelism = jobs;

  std::error_code ec;
  if (fs::exists(out_dir) && !fs::is_empty(out_dir, ec) && !force) {
    fail(1, "io", "output directory '" + out_dir + "' is not empty (use --force)");
  }
  fs::create_directories(out_dir, ec);
  if (ec) fail(1, "io", "cannot create '" + out_dir + "': " + ec.message());

  log_info("running " + std::string(to_string(config.policy.kind)) + " for " +
           std::to_string(config.repeats) + " repeats, T=" + std::to_string(config.horizon_t) +
           ", jobs=" + std::to_string(config.parallelism));
  const BatchResult result = run_batch(config);
  for (const auto& failure : result.failures) {
    std::cerr << "warning: seed " << failure.seed << " failed: " << failure.message << "\n";
  }
  if (result.traces.empty()) fail(1, "data", "every run failed");

  json seeds = json::array();
  for (const auto& trace : result.traces) {
    const std::string name = "trace_" + std::to_string(trace.seed) + ".json";
    write_file((fs::path(out_dir) / name).string(), trace_to_json(trace).dump(2) + "\n");
    seeds.push_back(trace.seed);
    log_debug("wrote " + name);
  }

  AggregateResult agg = aggregate(result.traces);
  attach_bound_curve(agg, config);
  write_file((fs::path(out_dir) / "aggregate.csv").string(), aggregate_to_csv(agg));
  write_file((fs::path(out_dir) / "aggregate.json").string(),
             aggregate_to_json(agg).dump(2) + "\n");

  json failures = json::array();
  for (const auto& failure : result.failures) {
    failures.push_back({{"seed", failure.seed}, {"message", failure.message}});
  }
  const json manifest{{"config", config_json},
                      {"config_hash", config_hash(config)},
                      {"seeds", seeds},
                      {"failures", failures},
                      {"version", kVersion}};
  write_file((fs::path(out_dir) / "manifest.json").string(), manifest.dump(2) + "\n");

  log_info("winner rate " + format_double(agg.winner_rate) + ", final mean regret " +
           format_double(agg.mean_regret.back()));
  return 0;
}

int cmd_gen(const std::string& kind, const std::string& out_path, int k, double delta_min,
            double uninformative_fraction, std::uint64_t seed) {
  PreferenceMatrix m = [&] {
    if (kind == "cycle") return gen_cycle();
    if (kind == "cycle2") return gen_cycle2();
    if (kind == "random-condorcet") {
      return gen_random_condorcet(k, delta_min, uninformative_fraction, seed);
    }
    fail(2, "args", "unknown dataset kind '" + kind + "'");
  }();
  save_matrix_file(m, out_path);
  log_info("wrote " + out_path + " (k=" + std::to_string(m.k()) + ")");
  return 0;
}

int cmd_validate(const std::string& matrix_path) {
  const PreferenceMatrix m = load_matrix_file(matrix_path);
  const WinnerReport report = winner_report(m);
  const AssumptionReport assumptions = check_assumptions(m);
  const GapSummary gaps = gap_summary(m);

  std::printf("ok: k=%d\n", m.k());
  if (report.condorcet) {
    std::printf("condorcet: %d\n", *report.condorcet);
  } else {
    std::printf("condorcet: none\n");
  }
  std::printf("copeland_winners:");
  for (ArmId arm : report.copeland_winners) std::printf(" %d", arm);
  std::printf("\n");
  std::printf("borda:");
  for (double b : report.borda) std::printf(" %s", format_double(b).c_str());
  std::printf("\n");
  std::printf("delta_min: %s\n",
              gaps.delta_min ? format_double(*gaps.delta_min).c_str() : "none");
  std::printf("indistinguishable_pairs: %zu\n", gaps.indistinguishable_pairs.size());
  std::printf("uninformative_arms: %zu\n", assumptions.uninformative_arms.size());
  std::printf("assumption1: %s\n", assumptions.ties_only_among_uninformative ? "ok" : "violated");
  std::printf("assumption2: %s\n", assumptions.one_third_cap_ok ? "ok" : "violated");
  return 0;
}

int cmd_bound(double alpha, int k, double epsilon, int m_batch, std::int64_t horizon,
              double delta_min) {
  const double c = exploration_constant(alpha, k, epsilon);
  std::printf("c: %s\n", format_double(c).c_str());
  if (delta_min > 0.0 && m_batch >= 4) {
    std::printf("regret_bound: %s\n",
                format_double(theoretical_bound(alpha, m_batch, k, horizon, epsilon,
                                                delta_min))
                    .c_str());
    std::printf("pair_comparison_bound: %s\n",
                format_double(pair_comparison_bound(alpha, horizon, c, delta_min)).c_str());
  }
  return 0;
}

int cmd_summarize(const std::string& trace_dir, const std::string& out_path) {
  std::vector<RegretTrace> traces;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(trace_dir)) {
    const std::string name = entry.path().filename().string();
    if (name.rfind("trace_", 0) == 0 && ends_with(name, ".json")) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& path : files) {
    traces.push_back(trace_from_json(detail::parse_json(read_file(path.string()), path.string())));
  }
  if (traces.empty()) fail(1, "data", "no trace_*.json files in '" + trace_dir + "'");
  std::sort(traces.begin(), traces.end(),
            [](const RegretTrace& a, const RegretTrace& b) { return a.seed < b.seed; });
  const AggregateResult agg = aggregate(traces);
  if (ends_with(out_path, ".json")) {
    write_file(out_path, aggregate_to_json(agg).dump(2) + "\n");
  } else {
    write_file(out_path, aggregate_to_csv(agg));
  }
  log_info("summarized " + std::to_string(traces.size()) + " traces into " + out_path);
  return 0;
}

int cmd_plot(const std::vector<std::string>& aggregate_paths, const std::string& out_svg) {
  std::vector<PlotSeries> series;
  for (const auto& path : aggregate_paths) {
    PlotSeries s;
    s.label = fs::path(path).stem().string();
    s.aggregate = aggregate_from_csv(read_file(path));
    series.push_back(std::move(s));
  }
  const PlotOutput out = render_regret_plot(series);
  write_file(out_svg, out.svg);
  write_file(out_svg + ".points.csv", out.points_csv);
  log_info("wrote " + out_svg + " and sidecar points CSV");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dueling-bandit benchmark harness"};
  app.require_subcommand(1);

  std::string config_path, out_path, kind, trace_dir, matrix_path;
  std::vector<std::string> aggregate_paths;
  int jobs = 0;
  bool force = false;
  int k = 8;
  double delta_min = 0.1;
  double uninformative_fraction = 0.0;
  std::uint64_t seed = 0;
  double alpha = 1.01, epsilon = 0.01;
  int m_batch = 4;
  std::int64_t horizon = 1000000;

  auto* run = app.add_subcommand("run", "run an experiment from a JSON config");
  run->add_option("--config", config_path, "run config JSON")->required();
  run->add_option("--out", out_path, "output directory")->required();
  run->add_option("--jobs", jobs, "worker threads (overrides config)");
  run->add_flag("--force", force, "overwrite a non-empty output directory");

  auto* gen = app.add_subcommand("gen", "generate a preference matrix");
  gen->add_option("--kind", kind, "cycle, cycle2 or random-condorcet")->required();
  gen->add_option("--out", out_path, "output file (.csv or .json)")->required();
  gen->add_option("--k", k, "arms (random-condorcet)");
  gen->add_option("--delta-min", delta_min, "minimum gap (random-condorcet)");
  gen->add_option("--uninformative-fraction", uninformative_fraction,
                  "fraction of uninformative arms (random-condorcet)");
  gen->add_option("--seed", seed, "generator seed (random-condorcet)");

  auto* validate = app.add_subcommand("validate", "validate a matrix and report winners");
  validate->add_option("matrix", matrix_path, "matrix file (.csv or .json)")->required();

  auto* bound = app.add_subcommand("bound", "evaluate the theoretical quantities");
  bound->add_option("--alpha", alpha, "exploration parameter");
  bound->add_option("--k", k, "number of arms");
  bound->add_option("--epsilon", epsilon, "failure probability");
  bound->add_option("--m", m_batch, "batch size");
  bound->add_option("--t", horizon, "horizon");
  bound->add_option("--delta-min", delta_min, "minimum gap");

  auto* summarize = app.add_subcommand("summarize", "aggregate per-run trace JSONs");
  summarize->add_option("--traces", trace_dir, "directory of trace_*.json")->required();
  summarize->add_option("--out", out_path, "output file (.csv or .json)")->required();

  auto* plot = app.add_subcommand("plot", "render regret curves as SVG");
  plot->add_option("--out", out_path, "output SVG path")->required();
  plot->add_option("aggregates", aggregate_paths, "aggregate CSV files")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << "ERROR: args: " << e.what() << "\n";
    return 2;
  }

  try {
    if (run->parsed()) return cmd_run(config_path, out_path, jobs, force);
    if (gen->parsed()) return cmd_gen(kind, out_path, k, delta_min, uninformative_fraction, seed);
    if (validate->parsed()) return cmd_validate(matrix_path);
    if (bound->parsed()) return cmd_bound(alpha, k, epsilon, m_batch, horizon, delta_min);
    if (summarize->parsed()) return cmd_summarize(trace_dir, out_path);
    if (plot->parsed()) return cmd_plot(aggregate_paths, out_path);
  } catch (const Error& e) {
    const bool config_class = e.code() == ErrorCode::BadParams || e.code() == ErrorCode::ParseError;
    fail(config_class ? 2 : 1, config_class ? "config" : "data", e.what());
  } catch (const std::exception& e) {
    fail(1, "internal", e.what());
  }
  return 0;
}
