#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "swarmbo/rng.hpp"
#include "swarmbo/space.hpp"

namespace swarmbo {

/// Swarm coefficients. The defaults (omega 0.8, c1 1.85, c2 2) sit inside the
/// convergence region -1 < omega < 1, 0 < c1 + c2 < 4(1 + omega).
struct PsoParams {
  double omega = 0.8;
  double c1 = 1.85;
  double c2 = 2.0;
  int population = 40;
  int max_iters = 100;
  double vmax_fraction = 0.2;  // velocity limit per dimension, fraction of its range
  double tol = 1e-8;           // minimum improvement that resets the stall counter
  int patience = 0;            // stalled iterations before stopping; 0 disables
};

struct Particle {
  PointVec position;
  std::vector<double> velocity;
  PointVec best_position;
  double best_fitness = 0.0;
};

struct SwarmState {
  std::vector<Particle> particles;
  PointVec global_best_position;
  double global_best_fitness = 0.0;
  int iteration = 0;
};

/// Fitness to maximize. NaN is treated as -infinity.
using Fitness = std::function<double(const PointVec&)>;

bool in_stability_region(double omega, double c1, double c2) noexcept;

/// Throws OmegaOutOfRange or LearningFactorsOutOfRange.
void check_stability(const PsoParams& params);

/// check_stability plus the population/iteration/velocity constraints
/// (InvalidParams).
void validate_pso_params(const PsoParams& params);

SwarmState init_swarm(const SearchSpace& space, const PsoParams& params, const Fitness& fitness,
                      Rng& rng);

/// Velocity and position update for one particle with explicit per-dimension
/// random factors. Does not evaluate fitness.
void move_particle(Particle& particle, const PointVec& global_best, const SearchSpace& space,
                   const PsoParams& params, std::span<const double> r1, std::span<const double> r2);

/// One synchronous iteration: every particle moves against the global best of
/// the previous iteration, then personal and global bests are refreshed in
/// index order. Replacement requires strict improvement.
SwarmState step_swarm(SwarmState state, const SearchSpace& space, const PsoParams& params,
                      const Fitness& fitness, Rng& rng);

struct PsoResult {
  PointVec best_position;
  double best_fitness = 0.0;
  std::vector<double> trace;  // global best after init and after every step
  std::size_t evaluations = 0;
};

PsoResult run_pso(const SearchSpace& space, const PsoParams& params, const Fitness& fitness,
                  Rng& rng);

}  // namespace swarmbo
