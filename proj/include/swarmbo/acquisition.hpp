#pragma once

#include "swarmbo/gp.hpp"

namespace swarmbo {

enum class AcquisitionKind { UCB, EI, PI };

struct AcquisitionSpec {
  AcquisitionKind kind = AcquisitionKind::UCB;
  double gamma = 2.0;      // UCB exploration weight
  double xi = 0.01;        // EI/PI improvement margin
  double incumbent = 0.0;  // best observed value, used by EI/PI
};

double normal_pdf(double z) noexcept;
double normal_cdf(double z) noexcept;

/// mu + gamma * sigma
double ucb(const Posterior& post, double gamma) noexcept;

/// Expected improvement over `incumbent + xi`; max(0, mu - incumbent - xi) when sigma = 0.
double ei(const Posterior& post, double incumbent, double xi) noexcept;

/// Probability of improvement over `incumbent + xi`; a step function when sigma = 0.
double pi(const Posterior& post, double incumbent, double xi) noexcept;

double evaluate(const AcquisitionSpec& spec, const GpModel& model, const PointVec& x);

}  // namespace swarmbo
