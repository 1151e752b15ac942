#include "swarmbo/gp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "swarmbo/error.hpp"

namespace swarmbo {
namespace {

constexpr double kJitterStart = 1e-10;
constexpr double kJitterMax = 1e-4;

double matern52_from_r2(double r2, double theta0) {
  const double s = std::sqrt(5.0 * r2);
  return theta0 * (1.0 + s + (5.0 / 3.0) * r2) * std::exp(-s);
}

double scaled_r2(const double* a, const double* b, std::size_t d, const KernelParams& params) {
  double r2 = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    const double diff = (a[j] - b[j]) / params.lengthscales[j];
    r2 += diff * diff;
  }
  return r2;
}

Eigen::VectorXd cross_covariance(const GpModel& model, const PointVec& unit) {
  const auto t = static_cast<Eigen::Index>(model.size());
  const std::size_t d = unit.size();
  Eigen::VectorXd k(t);
  // train_x is column-major; copy each row once
  PointVec row(d);
  for (Eigen::Index i = 0; i < t; ++i) {
    for (std::size_t j = 0; j < d; ++j) row[j] = model.train_x()(i, static_cast<Eigen::Index>(j));
    k(i) = matern52_from_r2(scaled_r2(row.data(), unit.data(), d, model.params()),
                            model.params().theta0);
  }
  return k;
}

}  // namespace

void validate_kernel_params(const KernelParams& params, std::size_t dim) {
  if (!(params.theta0 > 0.0) || !std::isfinite(params.theta0)) {
    throw Error(ErrorCode::InvalidParams, "theta0 must be positive");
  }
  if (params.lengthscales.size() != dim) {
    throw Error(ErrorCode::DimensionMismatch,
                "expected " + std::to_string(dim) + " lengthscales, got " +
                    std::to_string(params.lengthscales.size()));
  }
  for (double l : params.lengthscales) {
    if (!(l > 0.0) || !std::isfinite(l)) {
      throw Error(ErrorCode::InvalidParams, "lengthscales must be positive");
    }
  }
  if (!(params.noise_var >= 0.0) || !std::isfinite(params.noise_var)) {
    throw Error(ErrorCode::InvalidParams, "noise_var must be non-negative");
  }
}

KernelParams default_kernel_params(std::size_t dim) {
  return KernelParams{1.0, std::vector<double>(dim, 0.2), 1e-6};
}

double matern52(std::span<const double> a, std::span<const double> b,
                const KernelParams& params) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::DimensionMismatch, "kernel arguments differ in length");
  }
  validate_kernel_params(params, a.size());
  return matern52_from_r2(scaled_r2(a.data(), b.data(), a.size(), params), params.theta0);
}

Eigen::MatrixXd gram_matrix(const std::vector<PointVec>& xs, const KernelParams& params) {
  if (xs.empty()) throw Error(ErrorCode::LengthMismatch, "gram matrix of an empty point set");
  const std::size_t d = xs.front().size();
  for (const auto& x : xs) {
    if (x.size() != d) throw Error(ErrorCode::DimensionMismatch, "points differ in length");
  }
  validate_kernel_params(params, d);

  const auto t = static_cast<Eigen::Index>(xs.size());
  Eigen::MatrixXd K(t, t);
  for (Eigen::Index i = 0; i < t; ++i) {
    K(i, i) = params.theta0;
    for (Eigen::Index j = 0; j < i; ++j) {
      const double v = matern52_from_r2(
          scaled_r2(xs[static_cast<std::size_t>(i)].data(), xs[static_cast<std::size_t>(j)].data(),
                    d, params),
          params.theta0);
      K(i, j) = v;
      K(j, i) = v;
    }
  }
  return K;
}

GpModel fit_model(const SearchSpace& space, const std::vector<PointVec>& xs,
                  std::span<const double> ys, const KernelParams& params, FitOptions options) {
  if (xs.empty() || xs.size() != ys.size()) {
    throw Error(ErrorCode::LengthMismatch, std::to_string(xs.size()) + " inputs vs " +
                                               std::to_string(ys.size()) + " targets");
  }
  validate_kernel_params(params, space.size());

  GpModel model;
  model.space_ = space;
  model.params_ = params;

  const std::size_t t = xs.size();
  const std::size_t d = space.size();
  std::vector<PointVec> unit;
  unit.reserve(t);
  model.x_.resize(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < t; ++i) {
    unit.push_back(to_unit(space, xs[i]));
    for (std::size_t j = 0; j < d; ++j) {
      model.x_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = unit.back()[j];
    }
  }

  Eigen::VectorXd y = Eigen::Map<const Eigen::VectorXd>(ys.data(), static_cast<Eigen::Index>(t));
  if (options.standardize) {
    model.y_mean_ = y.mean();
    double std_dev = 0.0;
    if (t > 1) std_dev = std::sqrt((y.array() - model.y_mean_).square().sum() / double(t));
    model.y_std_ = (std_dev > 1e-12 * std::max(1.0, std::abs(model.y_mean_))) ? std_dev : 1.0;
    model.y_ = (y.array() - model.y_mean_) / model.y_std_;
  } else {
    model.y_ = y;
  }

  Eigen::MatrixXd K = gram_matrix(unit, params);
  K.diagonal().array() += params.noise_var;

  // plain factorization first; a pivot below the jitter floor counts as singular
  const double floor = kJitterStart * params.theta0;
  std::vector<double> ladder{0.0};
  for (double jitter = floor; jitter <= kJitterMax * params.theta0 * 1.0001; jitter *= 10.0)
    ladder.push_back(jitter);
  for (double jitter : ladder) {
    Eigen::MatrixXd A = K;
    A.diagonal().array() += jitter;
    Eigen::LLT<Eigen::MatrixXd> llt(A);
    if (llt.info() != Eigen::Success) continue;
    const Eigen::MatrixXd L = llt.matrixL();
    const double min_pivot = L.diagonal().minCoeff();
    if (jitter == 0.0 && !(min_pivot * min_pivot >= floor)) continue;
    model.factor_ = L;
    model.alpha_ = llt.solve(model.y_);
    model.jitter_ = jitter;
    if (model.alpha_.allFinite()) return model;
  }
  throw Error(ErrorCode::FactorizationFailure,
              "K + noise I is not positive definite even with jitter " +
                  std::to_string(kJitterMax * params.theta0));
}

Posterior predict_standardized(const GpModel& model, const PointVec& x) {
  const PointVec unit = to_unit(model.space(), x);
  const Eigen::VectorXd k = cross_covariance(model, unit);
  Posterior post;
  post.mean = k.dot(model.alpha());
  const Eigen::VectorXd v = model.factor().triangularView<Eigen::Lower>().solve(k);
  post.var = std::max(0.0, model.params().theta0 - v.squaredNorm());
  return post;
}

Posterior predict(const GpModel& model, const PointVec& x) {
  Posterior post = predict_standardized(model, x);
  post.mean = model.y_mean() + model.y_std() * post.mean;
  post.var *= model.y_std() * model.y_std();
  return post;
}

double log_marginal_likelihood(const GpModel& model) {
  const double t = static_cast<double>(model.size());
  const double fit = -0.5 * model.train_y().dot(model.alpha());
  const double log_det_half = model.factor().diagonal().array().log().sum();
  return fit - log_det_half - 0.5 * t * std::log(2.0 * std::numbers::pi);
}

KernelParams fit_hyperparams(const SearchSpace& space, const std::vector<PointVec>& xs,
                             std::span<const double> ys, const HyperfitOptions& options,
                             Rng& rng) {
  if (xs.size() != ys.size()) {
    throw Error(ErrorCode::LengthMismatch, "inputs and targets differ in count");
  }
  if (xs.size() < 2) {
    throw Error(ErrorCode::InvalidParams, "hyperparameter fitting needs at least 2 observations");
  }
  const std::size_t d = space.size();
  const auto& b = options.bounds;

  // search vector: log theta0, log l_1..l_d, [log noise_var]
  SearchSpace log_space;
  log_space.dims.push_back(
      {"log_theta0", DimKind::Real, std::log(b.theta0.first), std::log(b.theta0.second)});
  for (std::size_t j = 0; j < d; ++j) {
    log_space.dims.push_back({"log_l" + std::to_string(j), DimKind::Real,
                              std::log(b.lengthscale.first), std::log(b.lengthscale.second)});
  }
  const bool fit_noise = !options.fixed_noise_var.has_value();
  if (fit_noise) {
    log_space.dims.push_back(
        {"log_noise", DimKind::Real, std::log(b.noise_var.first), std::log(b.noise_var.second)});
  }
  validate_space(log_space);

  auto decode = [&](const PointVec& z) {
    KernelParams p;
    p.theta0 = std::exp(z[0]);
    p.lengthscales.resize(d);
    for (std::size_t j = 0; j < d; ++j) p.lengthscales[j] = std::exp(z[1 + j]);
    p.noise_var = fit_noise ? std::exp(z[1 + d]) : *options.fixed_noise_var;
    return p;
  };

  const Fitness lml = [&](const PointVec& z) {
    try {
      return log_marginal_likelihood(fit_model(space, xs, ys, decode(z)));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::FactorizationFailure) {
        return -std::numeric_limits<double>::infinity();
      }
      throw;
    }
  };

  const PsoResult best = run_pso(log_space, options.pso, lml, rng);
  if (!std::isfinite(best.best_fitness)) {
    KernelParams fallback = default_kernel_params(d);
    if (options.fixed_noise_var) fallback.noise_var = *options.fixed_noise_var;
    return fallback;
  }
  return decode(best.best_position);
}

}  // namespace swarmbo
