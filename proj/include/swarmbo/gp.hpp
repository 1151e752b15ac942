#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "swarmbo/pso.hpp"
#include "swarmbo/rng.hpp"
#include "swarmbo/space.hpp"

namespace swarmbo {

/// Matern-5/2 parameters: signal variance, one lengthscale per dimension
/// (ARD) and observation-noise variance.
struct KernelParams {
  double theta0 = 1.0;
  std::vector<double> lengthscales;
  double noise_var = 1e-6;
};

/// Throws InvalidParams (or DimensionMismatch when `dim` disagrees).
void validate_kernel_params(const KernelParams& params, std::size_t dim);

KernelParams default_kernel_params(std::size_t dim);

/// theta0 * (1 + sqrt(5 r^2) + 5/3 r^2) * exp(-sqrt(5 r^2)),
/// r^2 = sum_j (a_j - b_j)^2 / l_j^2.
double matern52(std::span<const double> a, std::span<const double> b, const KernelParams& params);

Eigen::MatrixXd gram_matrix(const std::vector<PointVec>& xs, const KernelParams& params);

struct Posterior {
  double mean = 0.0;
  double var = 0.0;  // latent variance, observation noise not included
};

struct FitOptions {
  bool standardize = true;  // subtract mean / divide by std of the targets
};

/// Zero-mean GP conditioned on a data set. Inputs are stored in unit-cube
/// coordinates and targets in standardized units; predict() converts back.
class GpModel {
 public:
  const SearchSpace& space() const noexcept { return space_; }
  const KernelParams& params() const noexcept { return params_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(x_.rows()); }

  /// t x d matrix of unit-cube inputs.
  const Eigen::MatrixXd& train_x() const noexcept { return x_; }
  /// Standardized targets.
  const Eigen::VectorXd& train_y() const noexcept { return y_; }
  /// Lower-triangular L with L L^T = K + (noise_var + jitter) I.
  const Eigen::MatrixXd& factor() const noexcept { return factor_; }
  const Eigen::VectorXd& alpha() const noexcept { return alpha_; }
  double jitter() const noexcept { return jitter_; }
  double y_mean() const noexcept { return y_mean_; }
  double y_std() const noexcept { return y_std_; }

 private:
  friend GpModel fit_model(const SearchSpace&, const std::vector<PointVec>&,
                           std::span<const double>, const KernelParams&, FitOptions);

  SearchSpace space_;
  KernelParams params_;
  Eigen::MatrixXd x_;
  Eigen::VectorXd y_;
  Eigen::MatrixXd factor_;
  Eigen::VectorXd alpha_;
  double jitter_ = 0.0;
  double y_mean_ = 0.0;
  double y_std_ = 1.0;
};

/// Jitter starts at 1e-10 * theta0 and grows tenfold up to 1e-4 * theta0;
/// throws FactorizationFailure beyond that, LengthMismatch on bad input sizes.
GpModel fit_model(const SearchSpace& space, const std::vector<PointVec>& xs,
                  std::span<const double> ys, const KernelParams& params, FitOptions options = {});

/// Posterior in the caller's units.
Posterior predict(const GpModel& model, const PointVec& x);

/// Posterior in standardized-target units (what the model solves internally).
Posterior predict_standardized(const GpModel& model, const PointVec& x);

/// -1/2 y^T (K + s I)^-1 y - 1/2 log det (K + s I) - t/2 log 2 pi, standardized y.
double log_marginal_likelihood(const GpModel& model);

struct HyperparamBounds {
  std::pair<double, double> theta0{1e-3, 1e3};
  std::pair<double, double> lengthscale{1e-2, 1e2};  // unit-cube units
  std::pair<double, double> noise_var{1e-8, 1.0};
};

struct HyperfitOptions {
  HyperparamBounds bounds;
  std::optional<double> fixed_noise_var;  // pin the noise instead of fitting it
  PsoParams pso{0.8, 1.85, 2.0, 20, 60, 0.5, 1e-6, 10};
};

/// Maximizes the log marginal likelihood over log-parameters with the swarm
/// optimizer. Falls back to default_kernel_params when no candidate factors.
KernelParams fit_hyperparams(const SearchSpace& space, const std::vector<PointVec>& xs,
                             std::span<const double> ys, const HyperfitOptions& options, Rng& rng);

}  // namespace swarmbo
