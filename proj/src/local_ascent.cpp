#include "swarmbo/local_ascent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "swarmbo/error.hpp"

namespace swarmbo::bench {
namespace {

class UnitFitness {
 public:
  UnitFitness(const SearchSpace& space, const Fitness& fitness) : space_(space), fitness_(fitness) {}

  double operator()(const PointVec& u) {
    ++evaluations;
    const double v = fitness_(from_unit(space_, u));
    return std::isnan(v) ? -std::numeric_limits<double>::infinity() : v;
  }

  std::size_t evaluations = 0;

 private:
  const SearchSpace& space_;
  const Fitness& fitness_;
};

void clamp_unit(PointVec& u) {
  for (double& v : u) v = std::clamp(v, 0.0, 1.0);
}

}  // namespace

void validate_local_params(const LocalAscentParams& params) {
  if (params.restarts < 1) throw Error(ErrorCode::InvalidMethodParams, "restarts must be >= 1");
  if (params.max_steps < 1) throw Error(ErrorCode::InvalidMethodParams, "max_steps must be >= 1");
  if (!(params.fd_step > 0.0 && params.fd_step < 0.5)) {
    throw Error(ErrorCode::InvalidMethodParams, "fd_step must lie in (0, 0.5)");
  }
  if (!(params.initial_step > params.min_step && params.min_step > 0.0)) {
    throw Error(ErrorCode::InvalidMethodParams, "need initial_step > min_step > 0");
  }
}

LocalAscentResult maximize_local(const SearchSpace& space, const Fitness& fitness,
                                 const LocalAscentParams& params, Rng& rng) {
  validate_local_params(params);
  const std::size_t d = space.size();
  UnitFitness f(space, fitness);

  PointVec best_u;
  double best_value = -std::numeric_limits<double>::infinity();
  std::vector<double> grad(d);

  for (int restart = 0; restart < params.restarts; ++restart) {
    PointVec u(d);
    for (double& v : u) v = rng.uniform();
    double value = f(u);
    double step = params.initial_step;

    for (int it = 0; it < params.max_steps && step >= params.min_step; ++it) {
      // central differences, one-sided where the stencil hits a bound
      for (std::size_t j = 0; j < d; ++j) {
        PointVec up = u, dn = u;
        up[j] = std::min(1.0, u[j] + params.fd_step);
        dn[j] = std::max(0.0, u[j] - params.fd_step);
        grad[j] = (f(up) - f(dn)) / (up[j] - dn[j]);
        // drop components that push out of the box
        if ((u[j] >= 1.0 && grad[j] > 0.0) || (u[j] <= 0.0 && grad[j] < 0.0)) grad[j] = 0.0;
        if (!std::isfinite(grad[j])) grad[j] = 0.0;
      }
      double norm = 0.0;
      for (double g : grad) norm += g * g;
      norm = std::sqrt(norm);
      if (norm == 0.0) break;

      bool moved = false;
      while (step >= params.min_step) {
        PointVec candidate(d);
        for (std::size_t j = 0; j < d; ++j) candidate[j] = u[j] + step * grad[j] / norm;
        clamp_unit(candidate);
        const double cv = f(candidate);
        if (cv > value) {
          u = std::move(candidate);
          value = cv;
          step = std::min(2.0 * step, 1.0);
          moved = true;
          break;
        }
        step *= 0.5;
      }
      if (!moved) break;
    }

    if (value > best_value || best_u.empty()) {
      best_value = value;
      best_u = u;
    }
  }

  return {from_unit(space, best_u), best_value, f.evaluations};
}

AcquisitionMaximizer local_maximizer(const LocalAscentParams& params) {
  return [params](const SearchSpace& space, const Fitness& fitness, Rng& rng) {
    return maximize_local(space, fitness, params, rng).best_position;
  };
}

BoResult run_local_bo(const BoConfig& config, const Objective& objective,
                      const LocalAscentParams& params) {
  validate_local_params(params);
  return run_bo_with(config, objective, local_maximizer(params));
}

}  // namespace swarmbo::bench
