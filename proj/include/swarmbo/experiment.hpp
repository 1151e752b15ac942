#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "swarmbo/baselines.hpp"
#include "swarmbo/boloop.hpp"
#include "swarmbo/local_ascent.hpp"
#include "swarmbo/objectives.hpp"

namespace swarmbo::bench {

enum class MethodKind { PsoBo, LocalBo, RandomSearch, GridSearch };

std::string_view to_string(MethodKind kind) noexcept;
/// Accepts "pso_bo", "local_bo", "random_search", "grid_search".
MethodKind parse_method_kind(std::string_view text);

struct MethodSpec {
  MethodKind kind = MethodKind::PsoBo;
  std::string label;             // defaults to to_string(kind)
  PsoParams pso;                 // PsoBo
  LocalAscentParams local;       // LocalBo
  int points_per_dim = 0;        // GridSearch
  std::size_t grid_cap = kDefaultGridCap;

  std::string name() const { return label.empty() ? std::string(to_string(kind)) : label; }
};

/// Everything shared by the cells of one experiment. `bo.seed` is replaced by
/// each cell's seed; `bo.pso` is replaced by the PsoBo method's parameters.
struct ExperimentSetup {
  ObjectiveSpec objective;
  BoConfig bo;
  std::vector<std::uint64_t> seeds;
  int jobs = 1;

  int budget() const noexcept { return bo.init_count + bo.max_iterations; }
};

struct Aggregate {
  double max = 0.0;
  double min = 0.0;
  double ave = 0.0;
};

/// MAX/MIN/AVE of a non-empty set of per-seed bests; NaNs when empty.
Aggregate summarize(std::span<const double> values) noexcept;

struct MethodReport {
  std::string label;
  MethodKind kind = MethodKind::PsoBo;
  Aggregate stats;
  std::vector<std::uint64_t> seeds;            // completed seeds, ascending input order
  std::vector<double> per_seed_best;           // aligned with seeds
  std::vector<std::vector<double>> traces;     // aligned with seeds
  std::vector<std::size_t> evaluations;        // aligned with seeds
  std::vector<std::uint64_t> missing;          // seeds whose cell failed
};

struct ExperimentReport {
  std::string objective;
  int budget = 0;
  std::vector<std::uint64_t> seeds;
  std::vector<MethodReport> methods;
  bool budget_parity = false;
};

/// Runs one (method, seed) cell with the given seed and returns its best value,
/// trace and counted evaluations.
struct CellResult {
  double best = 0.0;
  std::vector<double> trace;
  std::size_t evaluations = 0;
};
CellResult run_cell(const MethodSpec& method, const ExperimentSetup& setup, std::uint64_t seed);

/// Throws InvalidMethodParams / validation errors before any cell runs.
void validate_methods(const std::vector<MethodSpec>& methods, const ExperimentSetup& setup);

ExperimentReport run_experiment(const std::vector<MethodSpec>& methods,
                                const ExperimentSetup& setup);

struct SweepRow {
  double omega = 0.0;
  double ave_best = 0.0;
};

/// PSO-BO once per omega per seed with c1, c2 and everything else taken from
/// setup.bo.pso. Throws StabilityViolation naming the first bad omega.
std::vector<SweepRow> omega_sweep(const ExperimentSetup& setup, const std::vector<double>& omegas);

/// Runs fn(0..n-1) on up to `jobs` threads.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn);

}  // namespace swarmbo::bench
