#include "swarmbo/space.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "swarmbo/error.hpp"

namespace swarmbo {
namespace {

void check_length(const SearchSpace& space, const PointVec& x) {
  if (x.size() != space.size()) {
    throw Error(ErrorCode::DimensionMismatch,
                "point has " + std::to_string(x.size()) + " coordinates, space has " +
                    std::to_string(space.size()));
  }
}

}  // namespace

SearchSpace box_space(std::size_t d, double lower, double upper) {
  SearchSpace space;
  for (std::size_t j = 0; j < d; ++j) {
    space.dims.push_back({"x" + std::to_string(j), DimKind::Real, lower, upper});
  }
  return space;
}

void validate_space(const SearchSpace& space) {
  if (space.dims.empty()) throw Error(ErrorCode::EmptySpace, "search space has no dimensions");
  std::set<std::string> names;
  for (const auto& dim : space.dims) {
    if (!(dim.lower < dim.upper)) {
      throw Error(ErrorCode::InvertedBounds, "dimension '" + dim.name + "' requires lower < upper");
    }
    if (dim.kind == DimKind::Integer && std::floor(dim.upper) < std::ceil(dim.lower)) {
      throw Error(ErrorCode::EmptyIntegerRange,
                  "dimension '" + dim.name + "' contains no integer");
    }
    if (!names.insert(dim.name).second) {
      throw Error(ErrorCode::DuplicateName, "dimension name '" + dim.name + "' is repeated");
    }
  }
}

PointVec sample_uniform(const SearchSpace& space, Rng& rng) {
  PointVec x(space.size());
  for (std::size_t j = 0; j < space.size(); ++j) {
    x[j] = rng.uniform(space[j].lower, space[j].upper);
  }
  return x;
}

PointVec clamp(const SearchSpace& space, const PointVec& x) {
  check_length(space, x);
  PointVec out(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    out[j] = std::clamp(x[j], space[j].lower, space[j].upper);
  }
  return out;
}

PointVec materialize(const SearchSpace& space, const PointVec& x) {
  check_length(space, x);
  PointVec out(x);
  for (std::size_t j = 0; j < x.size(); ++j) {
    const auto& dim = space[j];
    if (dim.kind == DimKind::Integer) {
      // std::round rounds halfway cases away from zero
      out[j] = std::clamp(std::round(x[j]), std::ceil(dim.lower), std::floor(dim.upper));
    } else {
      out[j] = std::clamp(x[j], dim.lower, dim.upper);
    }
  }
  return out;
}

PointVec to_unit(const SearchSpace& space, const PointVec& x) {
  check_length(space, x);
  PointVec u(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    u[j] = (x[j] - space[j].lower) / space[j].range();
  }
  return u;
}

PointVec from_unit(const SearchSpace& space, const PointVec& u) {
  check_length(space, u);
  PointVec x(u.size());
  for (std::size_t j = 0; j < u.size(); ++j) {
    x[j] = space[j].lower + u[j] * space[j].range();
  }
  return x;
}

}  // namespace swarmbo
