#include "irops/dimred/pca.hpp"

#include <algorithm>
#include <string>

#include "irops/core/error.hpp"

namespace irops::dimred {

PcaModel pca_fit(const Eigen::MatrixXd& x, Eigen::Index d) {
  const Eigen::Index n = x.rows();
  const Eigen::Index m = x.cols();
  if (d < 1 || d > std::min(n - 1, m)) {
    throw DomainError("PCA dimension " + std::to_string(d) + " outside [1, min(n-1, m)] = [1, " +
                      std::to_string(std::min(n - 1, m)) + "]");
  }
  if (!x.allFinite()) {
    throw DomainError("PCA input contains NaN or infinite entries");
  }
  PcaModel model;
  model.mean = x.colwise().mean().transpose();
  const Eigen::MatrixXd centered = x.rowwise() - model.mean.transpose();
  const Eigen::MatrixXd cov = (centered.transpose() * centered) / static_cast<double>(n - 1);
  model.total_variance = cov.trace();

  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
  if (eig.info() != Eigen::Success) {
    throw ConvergenceError("covariance eigen-decomposition failed", 0.0);
  }
  // Ascending order from the solver; take the top d in descending order.
  model.components.resize(d, m);
  model.eigenvalues.resize(d);
  for (Eigen::Index k = 0; k < d; ++k) {
    const Eigen::Index src = m - 1 - k;
    model.eigenvalues(k) = std::max(0.0, eig.eigenvalues()(src));
    Eigen::VectorXd v = eig.eigenvectors().col(src);
    Eigen::Index arg = 0;
    v.cwiseAbs().maxCoeff(&arg);
    if (v(arg) < 0.0) {
      v = -v;
    }
    model.components.row(k) = v.transpose();
  }
  model.explained_variance_ratio = model.total_variance > 0.0
                                       ? Eigen::VectorXd(model.eigenvalues / model.total_variance)
                                       : Eigen::VectorXd::Zero(d);
  return model;
}

Eigen::MatrixXd pca_transform(const PcaModel& model, const Eigen::MatrixXd& x) {
  if (x.cols() != model.mean.size()) {
    throw DimensionError("PCA model expects " + std::to_string(model.mean.size()) +
                         " columns, got " + std::to_string(x.cols()));
  }
  return (x.rowwise() - model.mean.transpose()) * model.components.transpose();
}

Eigen::MatrixXd pca_reconstruct(const PcaModel& model, const Eigen::MatrixXd& y) {
  if (y.cols() != model.components.rows()) {
    throw DimensionError("PCA reconstruction expects " +
                         std::to_string(model.components.rows()) + " scores per row");
  }
  return (y * model.components).rowwise() + model.mean.transpose();
}

}  // namespace irops::dimred
