#pragma once

#include <cstddef>

#include "swarmbo/boloop.hpp"

namespace swarmbo::bench {

/// Multi-start projected gradient ascent with central finite differences.
/// Works in unit-cube coordinates, so fd_step and step sizes are fractions of
/// each dimension's range.
struct LocalAscentParams {
  int restarts = 10;
  int max_steps = 200;
  double fd_step = 1e-6;
  double initial_step = 0.1;
  double min_step = 1e-12;
};

/// Throws InvalidMethodParams.
void validate_local_params(const LocalAscentParams& params);

struct LocalAscentResult {
  PointVec best_position;
  double best_value = 0.0;
  std::size_t evaluations = 0;
};

LocalAscentResult maximize_local(const SearchSpace& space, const Fitness& fitness,
                                 const LocalAscentParams& params, Rng& rng);

AcquisitionMaximizer local_maximizer(const LocalAscentParams& params);

/// BO loop identical to run_bo except for the acquisition maximizer.
BoResult run_local_bo(const BoConfig& config, const Objective& objective,
                      const LocalAscentParams& params = {});

}  // namespace swarmbo::bench
