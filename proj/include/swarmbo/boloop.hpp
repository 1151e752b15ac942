#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "swarmbo/acquisition.hpp"
#include "swarmbo/gp.hpp"
#include "swarmbo/pso.hpp"
#include "swarmbo/space.hpp"

namespace swarmbo {

enum class Phase { Init, Bo };

struct ObservationRecord {
  PointVec point;         // continuous point proposed by the optimizer
  PointVec materialized;  // point actually passed to the objective
  double y = 0.0;
  int iteration = 0;
  Phase phase = Phase::Init;
};

struct ObservationHistory {
  std::vector<ObservationRecord> records;

  std::size_t size() const noexcept { return records.size(); }
  bool empty() const noexcept { return records.empty(); }
  double best_value() const;
};

/// Black-box objective, maximized. Receives materialized points.
using Objective = std::function<double(const PointVec&)>;

/// Inner maximizer for the acquisition surface.
using AcquisitionMaximizer =
    std::function<PointVec(const SearchSpace&, const Fitness&, Rng&)>;

struct BoConfig {
  SearchSpace space;
  AcquisitionSpec acquisition;
  PsoParams pso;
  int init_count = 5;
  int max_iterations = 30;
  std::uint64_t seed = 0;
  std::optional<double> noise_var;  // pinned noise variance; fitted when empty
  HyperparamBounds gp_bounds;
  PsoParams gp_fit_pso = HyperfitOptions{}.pso;
};

struct BoResult {
  PointVec best_point;  // materialized
  double best_value = 0.0;
  ObservationHistory history;
  std::vector<double> incumbent_trace;  // best-so-far after every evaluation
};

/// Throws InvalidParams / space / PSO validation errors.
void validate_bo_config(const BoConfig& config);

/// The acquisition maximizer used by PSO-BO: run_pso with config.pso.
AcquisitionMaximizer pso_maximizer(const PsoParams& params);

ObservationHistory init_design(const BoConfig& config, const Objective& objective, Rng& rng);

/// Surrogate fitted the way bo_step fits it for step `step`.
GpModel fit_surrogate(const ObservationHistory& history, const BoConfig& config, int step);

struct BoStep {
  ObservationHistory history;
  PointVec raw_point;
  PointVec point;
  double y = 0.0;
  std::optional<GpModel> model;  // empty when the step fell back to a random point
};

/// One BO iteration. Random streams are derived from config.seed with the tags
/// "gpfit:<step>" and "pso:<step>".
BoStep bo_step(const ObservationHistory& history, const BoConfig& config,
               const Objective& objective, const AcquisitionMaximizer& maximizer, int step);

BoResult run_bo(const BoConfig& config, const Objective& objective);

/// Same loop as run_bo with a different inner maximizer.
BoResult run_bo_with(const BoConfig& config, const Objective& objective,
                     const AcquisitionMaximizer& maximizer);

/// Best-so-far per record.
std::vector<double> incumbent_trace(const ObservationHistory& history);

}  // namespace swarmbo
