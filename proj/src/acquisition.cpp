#include "swarmbo/acquisition.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace swarmbo {

double normal_pdf(double z) noexcept {
  return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
}

double normal_cdf(double z) noexcept { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double ucb(const Posterior& post, double gamma) noexcept {
  return post.mean + gamma * std::sqrt(std::max(0.0, post.var));
}

double ei(const Posterior& post, double incumbent, double xi) noexcept {
  const double sigma = std::sqrt(std::max(0.0, post.var));
  const double delta = post.mean - incumbent - xi;
  if (sigma <= 0.0) return std::max(0.0, delta);
  const double z = delta / sigma;
  return std::max(0.0, delta * normal_cdf(z) + sigma * normal_pdf(z));
}

double pi(const Posterior& post, double incumbent, double xi) noexcept {
  const double sigma = std::sqrt(std::max(0.0, post.var));
  const double delta = post.mean - incumbent - xi;
  if (sigma <= 0.0) return delta > 0.0 ? 1.0 : 0.0;
  return normal_cdf(delta / sigma);
}

double evaluate(const AcquisitionSpec& spec, const GpModel& model, const PointVec& x) {
  const Posterior post = predict(model, x);
  switch (spec.kind) {
    case AcquisitionKind::UCB: return ucb(post, spec.gamma);
    case AcquisitionKind::EI: return ei(post, spec.incumbent, spec.xi);
    case AcquisitionKind::PI: return pi(post, spec.incumbent, spec.xi);
  }
  return ucb(post, spec.gamma);
}

}  // namespace swarmbo
