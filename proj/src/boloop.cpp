#include "swarmbo/boloop.hpp"

#include <iostream>
#include <limits>
#include <string>

#include "swarmbo/error.hpp"

namespace swarmbo {
namespace {

double observe(const Objective& objective, const PointVec& x, int index) {
  try {
    return objective(x);
  } catch (const std::exception& e) {
    throw Error(ErrorCode::ObjectiveFailure,
                "objective evaluation " + std::to_string(index) + " failed: " + e.what());
  }
}

}  // namespace

double ObservationHistory::best_value() const {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& r : records) best = std::max(best, r.y);
  return best;
}

void validate_bo_config(const BoConfig& config) {
  validate_space(config.space);
  validate_pso_params(config.pso);
  validate_pso_params(config.gp_fit_pso);
  if (config.init_count < 1) throw Error(ErrorCode::InvalidParams, "init_count must be >= 1");
  if (config.max_iterations < 1) {
    throw Error(ErrorCode::InvalidParams, "max_iterations must be >= 1");
  }
  if (config.acquisition.gamma < 0.0 || config.acquisition.xi < 0.0) {
    throw Error(ErrorCode::InvalidParams, "gamma and xi must be non-negative");
  }
  if (config.noise_var && !(*config.noise_var >= 0.0)) {
    throw Error(ErrorCode::InvalidParams, "pinned noise_var must be non-negative");
  }
}

AcquisitionMaximizer pso_maximizer(const PsoParams& params) {
  return [params](const SearchSpace& space, const Fitness& fitness, Rng& rng) {
    return run_pso(space, params, fitness, rng).best_position;
  };
}

ObservationHistory init_design(const BoConfig& config, const Objective& objective, Rng& rng) {
  ObservationHistory history;
  for (int i = 0; i < config.init_count; ++i) {
    ObservationRecord rec;
    rec.point = sample_uniform(config.space, rng);
    rec.materialized = materialize(config.space, rec.point);
    rec.y = observe(objective, rec.materialized, i);
    rec.iteration = i;
    rec.phase = Phase::Init;
    history.records.push_back(std::move(rec));
  }
  return history;
}

GpModel fit_surrogate(const ObservationHistory& history, const BoConfig& config, int step) {
  std::vector<PointVec> xs;
  std::vector<double> ys;
  for (const auto& r : history.records) {
    xs.push_back(r.materialized);
    ys.push_back(r.y);
  }

  KernelParams params = default_kernel_params(config.space.size());
  if (config.noise_var) params.noise_var = *config.noise_var;
  if (xs.size() >= 2) {
    HyperfitOptions options;
    options.bounds = config.gp_bounds;
    options.fixed_noise_var = config.noise_var;
    options.pso = config.gp_fit_pso;
    Rng rng(derive_seed(config.seed, "gpfit:" + std::to_string(step)));
    params = fit_hyperparams(config.space, xs, ys, options, rng);
  }
  return fit_model(config.space, xs, ys, params);
}

BoStep bo_step(const ObservationHistory& history, const BoConfig& config,
               const Objective& objective, const AcquisitionMaximizer& maximizer, int step) {
  if (history.empty()) throw Error(ErrorCode::InvalidParams, "bo_step needs a non-empty history");

  BoStep out;
  out.history = history;
  Rng rng(derive_seed(config.seed, "pso:" + std::to_string(step)));

  try {
    out.model = fit_surrogate(history, config, step);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::FactorizationFailure) throw;
    std::clog << "swarmbo: step " << step << ": " << e.what() << "; sampling a random point\n";
  }

  if (out.model) {
    AcquisitionSpec acq = config.acquisition;
    acq.incumbent = history.best_value();
    const GpModel& model = *out.model;
    const Fitness surface = [&](const PointVec& x) { return evaluate(acq, model, x); };
    out.raw_point = clamp(config.space, maximizer(config.space, surface, rng));
  } else {
    out.raw_point = sample_uniform(config.space, rng);
  }

  out.point = materialize(config.space, out.raw_point);
  const int index = static_cast<int>(history.size());
  out.y = observe(objective, out.point, index);

  ObservationRecord rec;
  rec.point = out.raw_point;
  rec.materialized = out.point;
  rec.y = out.y;
  rec.iteration = history.records.back().iteration + 1;
  rec.phase = Phase::Bo;
  out.history.records.push_back(std::move(rec));
  return out;
}

std::vector<double> incumbent_trace(const ObservationHistory& history) {
  std::vector<double> trace;
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& r : history.records) {
    best = std::max(best, r.y);
    trace.push_back(best);
  }
  return trace;
}

BoResult run_bo_with(const BoConfig& config, const Objective& objective,
                     const AcquisitionMaximizer& maximizer) {
  validate_bo_config(config);
  Rng init_rng(derive_seed(config.seed, "init"));
  ObservationHistory history = init_design(config, objective, init_rng);
  for (int t = 1; t <= config.max_iterations; ++t) {
    history = bo_step(history, config, objective, maximizer, t).history;
  }

  BoResult result;
  std::size_t best = 0;
  for (std::size_t i = 1; i < history.size(); ++i) {
    if (history.records[i].y > history.records[best].y) best = i;
  }
  result.best_point = history.records[best].materialized;
  result.best_value = history.records[best].y;
  result.incumbent_trace = incumbent_trace(history);
  result.history = std::move(history);
  return result;
}

BoResult run_bo(const BoConfig& config, const Objective& objective) {
  return run_bo_with(config, objective, pso_maximizer(config.pso));
}

}  // namespace swarmbo
