#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "swarmbo/experiment.hpp"

namespace swarmbo::cli {

/// Declarative run configuration, parsed from one JSON document with the
/// sections objective, space, acquisition, pso, gp, experiment and the
/// top-level output_dir. Unknown keys are rejected.
struct RunConfig {
  bench::ObjectiveSpec objective;
  std::optional<SearchSpace> space;  // replaces the objective's canonical domain
  AcquisitionSpec acquisition;
  PsoParams pso;
  HyperparamBounds gp_bounds;
  PsoParams gp_fit_pso = HyperfitOptions{}.pso;
  std::optional<double> noise_var;
  int init_count = 5;
  int iterations = 30;
  std::optional<std::uint64_t> seed;
  std::vector<std::uint64_t> seeds;  // empty: derived from the root seed
  std::vector<bench::MethodSpec> methods;
  std::vector<double> omegas;
  std::string output_dir = "swarmbo_out";

  SearchSpace search_space() const;
};

/// Throws Error{ConfigError} naming the offending key path.
RunConfig parse_config(const nlohmann::json& doc);
/// Reads and parses; JSON syntax errors report line and column.
RunConfig load_config(const std::filesystem::path& path);

/// Canonical JSON echo of a parsed config (all defaults filled in).
nlohmann::json to_json(const RunConfig& config);

BoConfig to_bo_config(const RunConfig& config, std::uint64_t seed);
bench::ExperimentSetup to_setup(const RunConfig& config, std::vector<std::uint64_t> seeds,
                                int jobs);

std::vector<double> default_omegas();

}  // namespace swarmbo::cli
