#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "irops/featsel/bounded_bfgs.hpp"

namespace irops::featsel {

/// (1 + sqrt(3) r / l) exp(-sqrt(3) r / l). Throws DomainError for r < 0 or l <= 0.
double matern32(double r, double lengthscale = 1.0);

struct GprHyperparameters {
  Eigen::VectorXd lengthscales;  ///< one per input dimension
  double signal_variance = 1.0;
  double noise_variance = 0.1;

  /// [log l_1 .. log l_D, log signal_variance, log noise_variance]
  [[nodiscard]] Eigen::VectorXd to_log() const;
  static GprHyperparameters from_log(const Eigen::VectorXd& theta);
};

/// ARD Matern-3/2 cross-covariance, a.rows() x b.rows().
Eigen::MatrixXd kernel_matrix(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                              const GprHyperparameters& hp);

struct LmlResult {
  double value = 0.0;
  Eigen::VectorXd gradient;  ///< w.r.t. to_log() coordinates; empty unless requested
  double jitter = 0.0;       ///< diagonal jitter that made the factorisation succeed
};

/// log p(y | X, theta) with constant prior mean. K_n = K + noise I gets
/// progressive jitter from 1e-10 to 1e-4 times its mean diagonal; failure
/// beyond that throws ConditioningError.
LmlResult gpr_log_marginal_likelihood(const GprHyperparameters& hp, const Eigen::MatrixXd& x,
                                      const Eigen::VectorXd& y, double prior_mean = 0.0,
                                      bool with_gradient = true);

struct RestartRecord {
  int index = 0;
  bool ok = false;
  double lml = 0.0;
  int iterations = 0;
  std::string message;
};

struct GprModel {
  GprHyperparameters hp;
  double prior_mean = 0.0;
  Eigen::MatrixXd x_train;
  Eigen::VectorXd y_train;
  Eigen::MatrixXd chol_lower;  ///< lower Cholesky factor of K_n (+ jitter)
  Eigen::VectorXd alpha;       ///< K_n^-1 (y - mu)
  double jitter = 0.0;
  double lml = 0.0;
  std::vector<RestartRecord> restarts;
  int best_restart = -1;
};

/// Builds the posterior cache for fixed hyperparameters.
GprModel gpr_condition(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                       const GprHyperparameters& hp, double prior_mean = 0.0);

struct GprBounds {
  double min_lengthscale = 1e-3;
  double max_lengthscale = 1e5;
  double min_signal_variance = 1e-6;
  double max_signal_variance = 1e4;
  double min_noise_variance = 1e-10;
  double max_noise_variance = 1e4;
};

struct GprFitOptions {
  int restarts = 5;
  std::uint64_t seed = 0;
  double init_lengthscale_lo = 0.1;
  double init_lengthscale_hi = 1000.0;
  double prior_mean = 0.0;
  /// Holds the noise variance fixed instead of optimising it.
  std::optional<double> fixed_noise_variance;
  GprBounds bounds;
  BfgsOptions optimizer{60, 1e-4, 1e-9, 2.0, 1e-4, 30};
};

/// Multi-restart bounded quasi-Newton ascent of the LML in log space.
/// Restart r starts from log-uniform lengthscales drawn from a stream
/// derived from (seed, r); the best LML is kept, ties to the lowest index.
/// Restarts that fail are recorded and skipped; if all fail a
/// ConvergenceError is thrown.
GprModel gpr_fit(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                 const GprFitOptions& options = {});

struct GprPrediction {
  Eigen::VectorXd mean;
  Eigen::VectorXd variance;  ///< latent f variance, excludes the noise term
  std::vector<std::string> warnings;
};

GprPrediction gpr_predict(const GprModel& model, const Eigen::MatrixXd& x_star);

}  // namespace irops::featsel
