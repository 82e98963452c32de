#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <span>
#include <vector>

namespace irops::dimred {

struct PerplexityCalibration {
  double beta = 1.0;   ///< precision 1 / (2 sigma^2)
  double sigma = 1.0;
  std::vector<double> probabilities;  ///< conditional p_{j|i}, sums to 1
  double entropy_bits = 0.0;
  int iterations = 0;
};

/// Binary search on the Gaussian precision of one point until the row's
/// Shannon entropy (bits) is within `tolerance` of log2(perplexity).
/// `sq_distances` excludes the point itself. The search runs on distances
/// normalised by their mean, so rescaling every distance by c leaves the
/// probabilities unchanged and scales sigma by sqrt(c).
/// Throws DomainError when the perplexity cannot be reached.
PerplexityCalibration perplexity_calibration(std::span<const double> sq_distances,
                                             double perplexity, double tolerance = 1e-5,
                                             int max_iterations = 50);

struct TsneParams {
  double perplexity = 30.0;
  double learning_rate = 200.0;
  int n_iter = 1000;
  double early_exaggeration = 12.0;
  int exaggeration_iters = 250;
  double initial_momentum = 0.5;
  double final_momentum = 0.8;
  int momentum_switch_iter = 250;
  std::uint64_t seed = 0;
  double init_sd = 1e-4;
  int kl_record_interval = 50;
};

struct KlSample {
  int iteration = 0;  ///< number of gradient updates applied before evaluation
  double kl = 0.0;
};

struct TsneResult {
  Eigen::MatrixXd embedding;  ///< n x 2
  std::vector<KlSample> kl_trace;
  TsneParams params;

  /// KL at the first state driven by the unexaggerated objective.
  [[nodiscard]] double post_exaggeration_kl() const;
  [[nodiscard]] double final_kl() const { return kl_trace.back().kl; }
};

/// Squared Euclidean distances between rows.
Eigen::MatrixXd squared_distances(const Eigen::MatrixXd& x);

/// Symmetric joint probabilities (p_{j|i} + p_{i|j}) / 2n with zero diagonal.
Eigen::MatrixXd joint_probabilities(const Eigen::MatrixXd& x, double perplexity);

/// Student-t (one degree of freedom) joint similarities of an embedding.
Eigen::MatrixXd student_t_similarities(const Eigen::MatrixXd& y);

/// KL(P || Q(Y)) over off-diagonal pairs with p_ij > 0.
double kl_divergence(const Eigen::MatrixXd& p, const Eigen::MatrixXd& q);

/// 4 sum_j (e p_ij - q_ij) (y_i - y_j) / (1 + |y_i - y_j|^2): the KL gradient
/// when e = 1, and the usual early-exaggeration update otherwise.
Eigen::MatrixXd tsne_gradient(const Eigen::MatrixXd& p, const Eigen::MatrixXd& y,
                              double exaggeration = 1.0);

/// Exact O(n^2) t-SNE into two dimensions. Requires n >= 10 and
/// perplexity in [2, (n-1)/3]; identical rows throughout is an error.
TsneResult tsne_embed(const Eigen::MatrixXd& x, const TsneParams& params = {});

}  // namespace irops::dimred
