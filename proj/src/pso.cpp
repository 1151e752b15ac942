#include "swarmbo/pso.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "swarmbo/error.hpp"

namespace swarmbo {
namespace {

double evaluate(const Fitness& fitness, const PointVec& x, std::size_t index) {
  double value = 0.0;
  try {
    value = fitness(x);
  } catch (const Error& e) {
    throw Error(e.code(), "particle " + std::to_string(index) + ": " + e.what());
  } catch (const std::exception& e) {
    throw Error(ErrorCode::ObjectiveFailure,
                "fitness evaluation failed for particle " + std::to_string(index) + ": " + e.what());
  }
  return std::isnan(value) ? -std::numeric_limits<double>::infinity() : value;
}

double vmax(const DimensionSpec& dim, const PsoParams& params) {
  return params.vmax_fraction * dim.range();
}

}  // namespace

bool in_stability_region(double omega, double c1, double c2) noexcept {
  const double c = c1 + c2;
  return -1.0 < omega && omega < 1.0 && 0.0 < c && c < 4.0 * (1.0 + omega);
}

void check_stability(const PsoParams& params) {
  if (!(-1.0 < params.omega && params.omega < 1.0)) {
    throw Error(ErrorCode::OmegaOutOfRange,
                "omega = " + std::to_string(params.omega) + " must lie in (-1, 1)");
  }
  const double c = params.c1 + params.c2;
  if (!(0.0 < c && c < 4.0 * (1.0 + params.omega))) {
    throw Error(ErrorCode::LearningFactorsOutOfRange,
                "c1 + c2 = " + std::to_string(c) + " must lie in (0, 4(1 + omega))");
  }
}

void validate_pso_params(const PsoParams& params) {
  check_stability(params);
  if (params.population < 2) throw Error(ErrorCode::InvalidParams, "population must be >= 2");
  if (params.max_iters < 1) throw Error(ErrorCode::InvalidParams, "max_iters must be >= 1");
  if (!(params.vmax_fraction > 0.0 && params.vmax_fraction <= 1.0)) {
    throw Error(ErrorCode::InvalidParams, "vmax_fraction must lie in (0, 1]");
  }
  if (!(params.tol >= 0.0)) throw Error(ErrorCode::InvalidParams, "tol must be >= 0");
  if (params.patience < 0) throw Error(ErrorCode::InvalidParams, "patience must be >= 0");
}

SwarmState init_swarm(const SearchSpace& space, const PsoParams& params, const Fitness& fitness,
                      Rng& rng) {
  validate_pso_params(params);
  const std::size_t d = space.size();
  SwarmState state;
  state.particles.resize(static_cast<std::size_t>(params.population));

  for (auto& p : state.particles) {
    p.position = sample_uniform(space, rng);
    p.velocity.resize(d);
    for (std::size_t j = 0; j < d; ++j) {
      const double vm = vmax(space[j], params);
      p.velocity[j] = rng.uniform(-vm, vm);
    }
  }

  for (std::size_t i = 0; i < state.particles.size(); ++i) {
    auto& p = state.particles[i];
    p.best_position = p.position;
    p.best_fitness = evaluate(fitness, p.position, i);
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i < state.particles.size(); ++i) {
    if (state.particles[i].best_fitness > state.particles[best].best_fitness) best = i;
  }
  state.global_best_position = state.particles[best].best_position;
  state.global_best_fitness = state.particles[best].best_fitness;
  state.iteration = 0;
  return state;
}

void move_particle(Particle& particle, const PointVec& global_best, const SearchSpace& space,
                   const PsoParams& params, std::span<const double> r1,
                   std::span<const double> r2) {
  const std::size_t d = space.size();
  for (std::size_t j = 0; j < d; ++j) {
    const double x = particle.position[j];
    double v = params.omega * particle.velocity[j] +
               params.c1 * r1[j] * (particle.best_position[j] - x) +
               params.c2 * r2[j] * (global_best[j] - x);
    const double vm = vmax(space[j], params);
    v = std::clamp(v, -vm, vm);
    particle.velocity[j] = v;
    particle.position[j] = std::clamp(x + v, space[j].lower, space[j].upper);
  }
}

SwarmState step_swarm(SwarmState state, const SearchSpace& space, const PsoParams& params,
                      const Fitness& fitness, Rng& rng) {
  const std::size_t d = space.size();
  std::vector<double> r1(d), r2(d);

  // draws happen in particle-then-dimension order before any evaluation
  for (auto& p : state.particles) {
    for (std::size_t j = 0; j < d; ++j) {
      r1[j] = rng.uniform();
      r2[j] = rng.uniform();
    }
    move_particle(p, state.global_best_position, space, params, r1, r2);
  }

  std::vector<double> values(state.particles.size());
  for (std::size_t i = 0; i < state.particles.size(); ++i) {
    values[i] = evaluate(fitness, state.particles[i].position, i);
  }

  for (std::size_t i = 0; i < state.particles.size(); ++i) {
    auto& p = state.particles[i];
    if (values[i] > p.best_fitness) {
      p.best_fitness = values[i];
      p.best_position = p.position;
    }
    if (p.best_fitness > state.global_best_fitness) {
      state.global_best_fitness = p.best_fitness;
      state.global_best_position = p.best_position;
    }
  }
  ++state.iteration;
  return state;
}

PsoResult run_pso(const SearchSpace& space, const PsoParams& params, const Fitness& fitness,
                  Rng& rng) {
  SwarmState state = init_swarm(space, params, fitness, rng);
  PsoResult result;
  result.evaluations = state.particles.size();
  result.trace.push_back(state.global_best_fitness);

  int stalled = 0;
  for (int it = 0; it < params.max_iters; ++it) {
    const double previous = state.global_best_fitness;
    state = step_swarm(std::move(state), space, params, fitness, rng);
    result.evaluations += state.particles.size();
    result.trace.push_back(state.global_best_fitness);

    // -inf -> -inf counts as a stall, -inf -> finite as progress
    const double gain = state.global_best_fitness - previous;
    const bool progressed = std::isnan(gain) ? false : gain >= params.tol && gain > 0.0;
    stalled = progressed ? 0 : stalled + 1;
    if (params.patience > 0 && stalled >= params.patience) break;
  }

  result.best_position = state.global_best_position;
  result.best_fitness = state.global_best_fitness;
  return result;
}

}  // namespace swarmbo
