#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "swarmbo/rng.hpp"

namespace swarmbo {

enum class DimKind { Real, Integer };

struct DimensionSpec {
  std::string name;
  DimKind kind = DimKind::Real;
  double lower = 0.0;
  double upper = 1.0;

  double range() const noexcept { return upper - lower; }
};

/// Continuous representation of a point, one coordinate per dimension. Integer
/// dimensions are carried as reals and only rounded by materialize().
using PointVec = std::vector<double>;

/// Ordered, bounded, mixed real/integer domain.
struct SearchSpace {
  std::vector<DimensionSpec> dims;

  std::size_t size() const noexcept { return dims.size(); }
  const DimensionSpec& operator[](std::size_t j) const { return dims[j]; }
};

/// Builds a space of `d` real dimensions named x0..x{d-1} sharing one interval.
SearchSpace box_space(std::size_t d, double lower, double upper);

/// Throws Error{EmptySpace | InvertedBounds | EmptyIntegerRange | DuplicateName}.
void validate_space(const SearchSpace& space);

/// Independent uniform draw per coordinate, consumed in dimension order.
PointVec sample_uniform(const SearchSpace& space, Rng& rng);

/// Coordinate-wise projection onto the box.
PointVec clamp(const SearchSpace& space, const PointVec& x);

/// Rounds Integer coordinates half away from zero and clamps them into the
/// integer lattice of their range. Real coordinates pass through.
PointVec materialize(const SearchSpace& space, const PointVec& x);

/// Maps x into [0,1]^d using the space bounds.
PointVec to_unit(const SearchSpace& space, const PointVec& x);
PointVec from_unit(const SearchSpace& space, const PointVec& u);

}  // namespace swarmbo
