#include "swarmbo/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "swarmbo/config.hpp"
#include "swarmbo/error.hpp"
#include "swarmbo/io.hpp"

namespace swarmbo::cli {
namespace {

namespace fs = std::filesystem;

struct Options {
  std::string config;
  std::string output_dir;
  std::optional<std::uint64_t> seed;
  int jobs = 0;
};

/// --seed, then the config, then SWARMBO_SEED.
std::optional<std::uint64_t> resolve_seed(const Options& opts, const RunConfig& cfg) {
  if (opts.seed) return opts.seed;
  if (cfg.seed) return cfg.seed;
  if (const char* env = std::getenv("SWARMBO_SEED"); env && *env) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw Error(ErrorCode::ConfigError, "SWARMBO_SEED is not a non-negative integer");
  }
  return std::nullopt;
}

std::vector<std::uint64_t> resolve_seeds(const Options& opts, const RunConfig& cfg) {
  if (!cfg.seeds.empty() && !opts.seed) return cfg.seeds;
  const std::size_t count = cfg.seeds.empty() ? 10 : cfg.seeds.size();
  const std::uint64_t base = resolve_seed(opts, cfg).value_or(1);
  std::vector<std::uint64_t> seeds(count);
  for (std::size_t i = 0; i < count; ++i) seeds[i] = base + i;
  return seeds;
}

int resolve_jobs(const Options& opts) {
  if (opts.jobs > 0) return opts.jobs;
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

fs::path output_dir(const Options& opts, const RunConfig& cfg) {
  return opts.output_dir.empty() ? fs::path(cfg.output_dir) : fs::path(opts.output_dir);
}

std::string format_point(const PointVec& x) {
  std::string s = "[";
  for (std::size_t i = 0; i < x.size(); ++i) s += (i ? ", " : "") + io::format_double(x[i]);
  return s + "]";
}

int cmd_run(const Options& opts, std::ostream& out) {
  const RunConfig cfg = load_config(opts.config);
  const std::uint64_t seed = resolve_seed(opts, cfg).value_or(0);
  const BoConfig bo = to_bo_config(cfg, seed);
  try {
    validate_bo_config(bo);
  } catch (const Error& e) {
    throw Error(ErrorCode::ConfigError, e.what());
  }

  const Objective objective = bench::make_objective(cfg.objective, derive_seed(seed, "noise"));
  const BoResult result = run_bo(bo, objective);

  RunConfig echo = cfg;
  echo.seed = seed;
  const fs::path dir = output_dir(opts, cfg);
  io::write_result_json(dir / "result.json", result, bo.space, to_json(echo));
  io::write_trace_csv(dir / "trace.csv", result.incumbent_trace);

  out << "best_point " << format_point(result.best_point) << "\n";
  out << "best_value " << io::format_double(result.best_value) << "\n";
  out << "evaluations " << result.history.size() << "\n";
  out << "wrote " << (dir / "result.json").string() << "\n";
  return kExitOk;
}

void print_table(std::ostream& out, const io::CsvTable& table) {
  std::vector<std::size_t> width(table.header.size());
  for (std::size_t c = 0; c < width.size(); ++c) {
    width[c] = table.header[c].size();
    for (const auto& row : table.rows) width[c] = std::max(width[c], row[c].size());
  }
  const auto line = [&](const std::vector<std::string>& row) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      out << (c ? "  " : "") << std::left << std::setw(static_cast<int>(width[c])) << row[c];
    }
    out << "\n";
  };
  line(table.header);
  for (const auto& row : table.rows) line(row);
}

int cmd_compare(const Options& opts, std::ostream& out) {
  const RunConfig cfg = load_config(opts.config);
  if (cfg.methods.size() < 2) {
    throw Error(ErrorCode::ConfigError, "'experiment.methods': compare needs at least 2 methods");
  }
  const auto seeds = resolve_seeds(opts, cfg);
  if (seeds.size() < 2) {
    throw Error(ErrorCode::ConfigError, "'experiment.seeds': compare needs at least 2 seeds");
  }
  const bench::ExperimentSetup setup = to_setup(cfg, seeds, resolve_jobs(opts));
  try {
    bench::validate_methods(cfg.methods, setup);
  } catch (const Error& e) {
    throw Error(ErrorCode::ConfigError, e.what());
  }

  const bench::ExperimentReport report = bench::run_experiment(cfg.methods, setup);

  RunConfig echo = cfg;
  echo.seeds = seeds;
  const fs::path dir = output_dir(opts, cfg);
  io::write_report_json(dir / "report.json", report, to_json(echo));
  io::write_report_csv(dir / "report.csv", report);
  for (const auto& m : report.methods) {
    for (std::size_t i = 0; i < m.seeds.size(); ++i) {
      io::write_trace_csv(dir / ("trace_" + m.label + "_" + std::to_string(m.seeds[i]) + ".csv"),
                          m.traces[i]);
    }
  }

  print_table(out, io::report_table(report));
  out << "budget " << report.budget << " evaluations per run, parity "
      << (report.budget_parity ? "ok" : "VIOLATED") << "\n";
  if (!report.budget_parity) {
    throw Error(ErrorCode::InvalidMethodParams, "methods consumed different evaluation budgets");
  }
  return kExitOk;
}

int cmd_sweep(const Options& opts, std::ostream& out) {
  const RunConfig cfg = load_config(opts.config);
  const auto seeds = resolve_seeds(opts, cfg);
  const auto omegas = cfg.omegas.empty() ? default_omegas() : cfg.omegas;
  const bench::ExperimentSetup setup = to_setup(cfg, seeds, resolve_jobs(opts));

  std::vector<bench::SweepRow> rows;
  try {
    rows = bench::omega_sweep(setup, omegas);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::StabilityViolation || e.code() == ErrorCode::InvalidParams) {
      throw Error(ErrorCode::ConfigError, e.what());
    }
    throw;
  }

  const fs::path dir = output_dir(opts, cfg);
  io::write_sweep_csv(dir / "sweep.csv", rows);
  out << "omega  ave_best\n";
  for (const auto& r : rows) {
    out << io::format_double(r.omega) << "  " << io::format_double(r.ave_best) << "\n";
  }
  out << "wrote " << (dir / "sweep.csv").string() << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"swarmbo: Bayesian optimization with a particle-swarm acquisition maximizer"};
  app.require_subcommand(1);

  Options opts;
  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opts.config, "run configuration (JSON)")->required();
    sub->add_option("--output-dir", opts.output_dir, "directory for emitted artifacts");
    sub->add_option("--seed", opts.seed, "root seed override");
    sub->add_option("--jobs", opts.jobs, "worker threads (default: available cores)")
        ->check(CLI::NonNegativeNumber);
  };
  auto* run = app.add_subcommand("run", "one PSO-BO run");
  auto* compare = app.add_subcommand("compare", "compare methods over repeated seeds");
  auto* sweep = app.add_subcommand("sweep", "PSO-BO over a list of inertia weights");
  for (auto* sub : {run, compare, sweep}) add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (run->parsed()) return cmd_run(opts, out);
    if (compare->parsed()) return cmd_compare(opts, out);
    return cmd_sweep(opts, out);
  } catch (const Error& e) {
    err << "swarmbo: " << e.what() << "\n";
    return e.code() == ErrorCode::ConfigError ? kExitUsage : kExitRuntime;
  } catch (const std::exception& e) {
    err << "swarmbo: " << e.what() << "\n";
    return kExitRuntime;
  }
}

}  // namespace swarmbo::cli
