#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "swarmbo/boloop.hpp"
#include "swarmbo/rng.hpp"
#include "swarmbo/space.hpp"

namespace swarmbo::bench {

enum class ObjectiveName { Sphere, Rastrigin, Branin, Hartmann3, StyblinskiTang };

/// Synthetic minimization benchmark. With `negate` the library maximizes -f.
struct ObjectiveSpec {
  ObjectiveName name = ObjectiveName::Sphere;
  int dims = 2;
  double noise_std = 0.0;
  bool negate = true;
};

std::string_view to_string(ObjectiveName name) noexcept;
/// Accepts "sphere", "rastrigin", "branin", "hartmann3", "styblinski_tang".
ObjectiveName parse_objective_name(std::string_view text);

/// Throws DimensionMismatch for fixed-arity functions, InvalidParams otherwise.
void validate_objective(const ObjectiveSpec& spec);

/// Canonical domain:
///   Sphere         [-5, 5]^d
///   Rastrigin      [-5.12, 5.12]^d
///   Branin         [-5, 10] x [0, 15]
///   Hartmann3      [0, 1]^3
///   StyblinskiTang [-5, 5]^d
SearchSpace canonical_space(const ObjectiveSpec& spec);

/// Noiseless f(x), minimization convention.
double raw_value(ObjectiveName name, const PointVec& x);

/// Known global minimum of the noiseless function.
struct KnownOptimum {
  PointVec argmin;
  double value = 0.0;
};
KnownOptimum known_minimum(const ObjectiveSpec& spec);

/// Best attainable value in the library's (maximization) convention.
double optimum_for_maximization(const ObjectiveSpec& spec);

/// (+/-) f(x) + eps, eps ~ N(0, noise_std^2) drawn from rng.
double eval_objective(const ObjectiveSpec& spec, const PointVec& x, Rng& rng);

/// Objective closure owning its own noise stream.
Objective make_objective(const ObjectiveSpec& spec, std::uint64_t noise_seed);

}  // namespace swarmbo::bench
