#pragma once

#include <cstddef>
#include <vector>

#include "swarmbo/boloop.hpp"

namespace swarmbo::bench {

struct SearchResult {
  PointVec best_point;  // materialized
  double best_value = 0.0;
  std::vector<double> incumbent_trace;
  std::size_t evaluations = 0;
};

inline constexpr std::size_t kDefaultGridCap = 1'000'000;

SearchResult run_random_search(const SearchSpace& space, const Objective& objective, int budget,
                               Rng& rng);

/// Per-dimension lattice: `points_per_dim` evenly spaced values, or every
/// integer of an Integer dimension when that lattice is coarser.
std::vector<std::vector<double>> grid_axes(const SearchSpace& space, int points_per_dim);

/// Number of lattice points; throws GridTooLarge above `cap`.
std::size_t grid_size(const SearchSpace& space, int points_per_dim,
                      std::size_t cap = kDefaultGridCap);

SearchResult run_grid_search(const SearchSpace& space, const Objective& objective,
                             int points_per_dim, std::size_t cap = kDefaultGridCap);

}  // namespace swarmbo::bench
