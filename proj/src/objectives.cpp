#include "swarmbo/objectives.hpp"

#include <array>
#include <cmath>
#include <memory>
#include <numbers>

#include "swarmbo/error.hpp"

namespace swarmbo::bench {
namespace {

constexpr double kPi = std::numbers::pi;

double sphere(const PointVec& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

double rastrigin(const PointVec& x) {
  double s = 10.0 * static_cast<double>(x.size());
  for (double v : x) s += v * v - 10.0 * std::cos(2.0 * kPi * v);
  return s;
}

double branin(const PointVec& x) {
  const double b = 5.1 / (4.0 * kPi * kPi);
  const double c = 5.0 / kPi;
  const double t = 1.0 / (8.0 * kPi);
  const double term = x[1] - b * x[0] * x[0] + c * x[0] - 6.0;
  return term * term + 10.0 * (1.0 - t) * std::cos(x[0]) + 10.0;
}

double hartmann3(const PointVec& x) {
  static constexpr std::array<double, 4> alpha{1.0, 1.2, 3.0, 3.2};
  static constexpr std::array<std::array<double, 3>, 4> A{{
      {3.0, 10.0, 30.0},
      {0.1, 10.0, 35.0},
      {3.0, 10.0, 30.0},
      {0.1, 10.0, 35.0},
  }};
  static constexpr std::array<std::array<double, 3>, 4> P{{
      {0.3689, 0.1170, 0.2673},
      {0.4699, 0.4387, 0.7470},
      {0.1091, 0.8732, 0.5547},
      {0.0381, 0.5743, 0.8828},
  }};
  double s = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    double inner = 0.0;
    for (std::size_t j = 0; j < 3; ++j) {
      const double diff = x[j] - P[i][j];
      inner += A[i][j] * diff * diff;
    }
    s += alpha[i] * std::exp(-inner);
  }
  return -s;
}

double styblinski_tang(const PointVec& x) {
  double s = 0.0;
  for (double v : x) s += v * v * v * v - 16.0 * v * v + 5.0 * v;
  return 0.5 * s;
}

}  // namespace

std::string_view to_string(ObjectiveName name) noexcept {
  switch (name) {
    case ObjectiveName::Sphere: return "sphere";
    case ObjectiveName::Rastrigin: return "rastrigin";
    case ObjectiveName::Branin: return "branin";
    case ObjectiveName::Hartmann3: return "hartmann3";
    case ObjectiveName::StyblinskiTang: return "styblinski_tang";
  }
  return "unknown";
}

ObjectiveName parse_objective_name(std::string_view text) {
  for (auto n : {ObjectiveName::Sphere, ObjectiveName::Rastrigin, ObjectiveName::Branin,
                 ObjectiveName::Hartmann3, ObjectiveName::StyblinskiTang}) {
    if (text == to_string(n)) return n;
  }
  throw Error(ErrorCode::InvalidParams, "unknown objective '" + std::string(text) + "'");
}

void validate_objective(const ObjectiveSpec& spec) {
  const auto fixed = [&](int arity) {
    if (spec.dims != arity) {
      throw Error(ErrorCode::DimensionMismatch,
                  std::string(to_string(spec.name)) + " is defined for " + std::to_string(arity) +
                      " dimensions, got " + std::to_string(spec.dims));
    }
  };
  switch (spec.name) {
    case ObjectiveName::Branin: fixed(2); break;
    case ObjectiveName::Hartmann3: fixed(3); break;
    default:
      if (spec.dims < 1) throw Error(ErrorCode::InvalidParams, "dims must be >= 1");
  }
  if (!(spec.noise_std >= 0.0)) throw Error(ErrorCode::InvalidParams, "noise_std must be >= 0");
}

SearchSpace canonical_space(const ObjectiveSpec& spec) {
  validate_objective(spec);
  const auto d = static_cast<std::size_t>(spec.dims);
  switch (spec.name) {
    case ObjectiveName::Sphere: return box_space(d, -5.0, 5.0);
    case ObjectiveName::Rastrigin: return box_space(d, -5.12, 5.12);
    case ObjectiveName::Branin:
      return SearchSpace{{{"x0", DimKind::Real, -5.0, 10.0}, {"x1", DimKind::Real, 0.0, 15.0}}};
    case ObjectiveName::Hartmann3: return box_space(3, 0.0, 1.0);
    case ObjectiveName::StyblinskiTang: return box_space(d, -5.0, 5.0);
  }
  return box_space(d, 0.0, 1.0);
}

double raw_value(ObjectiveName name, const PointVec& x) {
  switch (name) {
    case ObjectiveName::Sphere: return sphere(x);
    case ObjectiveName::Rastrigin: return rastrigin(x);
    case ObjectiveName::Branin: return branin(x);
    case ObjectiveName::Hartmann3: return hartmann3(x);
    case ObjectiveName::StyblinskiTang: return styblinski_tang(x);
  }
  return 0.0;
}

KnownOptimum known_minimum(const ObjectiveSpec& spec) {
  validate_objective(spec);
  const auto d = static_cast<std::size_t>(spec.dims);
  switch (spec.name) {
    case ObjectiveName::Sphere:
    case ObjectiveName::Rastrigin: return {PointVec(d, 0.0), 0.0};
    case ObjectiveName::Branin: return {{kPi, 2.275}, 0.39788735772973816};
    case ObjectiveName::Hartmann3:
      return {{0.114614, 0.555649, 0.852547}, -3.862779787332663};
    case ObjectiveName::StyblinskiTang:
      return {PointVec(d, -2.9035340286202334), -39.166165703771412 * static_cast<double>(d)};
  }
  return {};
}

double optimum_for_maximization(const ObjectiveSpec& spec) {
  const double v = known_minimum(spec).value;
  return spec.negate ? -v : v;
}

double eval_objective(const ObjectiveSpec& spec, const PointVec& x, Rng& rng) {
  if (x.size() != static_cast<std::size_t>(spec.dims)) {
    throw Error(ErrorCode::DimensionMismatch,
                "objective expects " + std::to_string(spec.dims) + " coordinates, got " +
                    std::to_string(x.size()));
  }
  const double f = raw_value(spec.name, x);
  double y = spec.negate ? -f : f;
  if (spec.noise_std > 0.0) y += spec.noise_std * rng.normal();
  return y;
}

Objective make_objective(const ObjectiveSpec& spec, std::uint64_t noise_seed) {
  validate_objective(spec);
  auto rng = std::make_shared<Rng>(noise_seed);
  return [spec, rng](const PointVec& x) { return eval_objective(spec, x, *rng); };
}

}  // namespace swarmbo::bench
