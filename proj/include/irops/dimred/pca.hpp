#pragma once

#include <Eigen/Dense>

namespace irops::dimred {

/// Principal directions of the sample covariance.
struct PcaModel {
  Eigen::VectorXd mean;                      ///< m
  Eigen::MatrixXd components;                ///< d x m, orthonormal rows
  Eigen::VectorXd eigenvalues;               ///< d, non-increasing, >= 0
  Eigen::VectorXd explained_variance_ratio;  ///< d, eigenvalue / total variance
  double total_variance = 0.0;               ///< trace of the covariance
};

/// Eigen-decomposition of the (n-1)-normalised covariance. Requires
/// 1 <= d <= min(n - 1, m). Each component is signed so that its entry of
/// largest magnitude is positive (first such entry on ties).
PcaModel pca_fit(const Eigen::MatrixXd& x, Eigen::Index d);

/// Y = (X - mean) * components^T. Throws DimensionError on a column mismatch.
Eigen::MatrixXd pca_transform(const PcaModel& model, const Eigen::MatrixXd& x);

/// X ~ mean + Y * components.
Eigen::MatrixXd pca_reconstruct(const PcaModel& model, const Eigen::MatrixXd& y);

}  // namespace irops::dimred
