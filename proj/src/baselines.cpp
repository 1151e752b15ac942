#include "swarmbo/baselines.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "swarmbo/error.hpp"

namespace swarmbo::bench {
namespace {

struct Tracker {
  SearchResult result;

  void observe(const PointVec& x, double y) {
    if (result.evaluations == 0 || y > result.best_value) {
      result.best_value = y;
      result.best_point = x;
    }
    ++result.evaluations;
    result.incumbent_trace.push_back(result.best_value);
  }
};

double evaluate(const Objective& objective, const PointVec& x, std::size_t index) {
  try {
    return objective(x);
  } catch (const std::exception& e) {
    throw Error(ErrorCode::ObjectiveFailure,
                "objective evaluation " + std::to_string(index) + " failed: " + e.what());
  }
}

}  // namespace

SearchResult run_random_search(const SearchSpace& space, const Objective& objective, int budget,
                               Rng& rng) {
  validate_space(space);
  if (budget < 1) throw Error(ErrorCode::InvalidMethodParams, "budget must be >= 1");
  Tracker tracker;
  for (int i = 0; i < budget; ++i) {
    const PointVec x = materialize(space, sample_uniform(space, rng));
    tracker.observe(x, evaluate(objective, x, tracker.result.evaluations));
  }
  return tracker.result;
}

std::vector<std::vector<double>> grid_axes(const SearchSpace& space, int points_per_dim) {
  validate_space(space);
  if (points_per_dim < 2) throw Error(ErrorCode::InvalidMethodParams, "points_per_dim must be >= 2");
  std::vector<std::vector<double>> axes;
  for (const auto& dim : space.dims) {
    std::vector<double> axis;
    if (dim.kind == DimKind::Integer) {
      const double lo = std::ceil(dim.lower);
      const double hi = std::floor(dim.upper);
      const double count = hi - lo + 1.0;
      if (count <= points_per_dim) {
        for (double v = lo; v <= hi; v += 1.0) axis.push_back(v);
      } else {
        for (int k = 0; k < points_per_dim; ++k) {
          const double v = std::round(lo + (hi - lo) * k / (points_per_dim - 1));
          if (axis.empty() || v != axis.back()) axis.push_back(v);
        }
      }
    } else {
      for (int k = 0; k < points_per_dim; ++k) {
        axis.push_back(k == points_per_dim - 1
                           ? dim.upper
                           : dim.lower + dim.range() * k / (points_per_dim - 1));
      }
    }
    axes.push_back(std::move(axis));
  }
  return axes;
}

std::size_t grid_size(const SearchSpace& space, int points_per_dim, std::size_t cap) {
  double total = 1.0;
  for (const auto& axis : grid_axes(space, points_per_dim)) total *= static_cast<double>(axis.size());
  if (total > static_cast<double>(cap)) {
    throw Error(ErrorCode::GridTooLarge, "grid has " + std::to_string(total) +
                                             " points, cap is " + std::to_string(cap));
  }
  return static_cast<std::size_t>(total);
}

SearchResult run_grid_search(const SearchSpace& space, const Objective& objective,
                             int points_per_dim, std::size_t cap) {
  const auto total = grid_size(space, points_per_dim, cap);
  const auto axes = grid_axes(space, points_per_dim);
  const std::size_t d = axes.size();

  Tracker tracker;
  std::vector<std::size_t> index(d, 0);
  PointVec x(d);
  for (std::size_t n = 0; n < total; ++n) {
    for (std::size_t j = 0; j < d; ++j) x[j] = axes[j][index[j]];
    tracker.observe(x, evaluate(objective, x, n));
    // odometer, last dimension fastest
    for (std::size_t j = d; j-- > 0;) {
      if (++index[j] < axes[j].size()) break;
      index[j] = 0;
    }
  }
  return tracker.result;
}

}  // namespace swarmbo::bench
