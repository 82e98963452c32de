#include "irops/featsel/gpr.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "irops/core/error.hpp"
#include "irops/core/rng.hpp"

namespace irops::featsel {

namespace {

const double kSqrt3 = std::sqrt(3.0);

void check_shapes(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                  const GprHyperparameters& hp) {
  if (x.rows() != y.size()) {
    throw DimensionError("GPR inputs have " + std::to_string(x.rows()) + " rows but " +
                         std::to_string(y.size()) + " targets");
  }
  if (x.cols() != hp.lengthscales.size()) {
    throw DimensionError("GPR expects " + std::to_string(hp.lengthscales.size()) +
                         " input columns, got " + std::to_string(x.cols()));
  }
  if (x.rows() == 0) {
    throw EmptyInputError("GPR needs at least one training point");
  }
  if (!x.allFinite() || !y.allFinite()) {
    throw DomainError("GPR inputs contain NaN or infinite values");
  }
}

void check_hp(const GprHyperparameters& hp) {
  if (!(hp.signal_variance > 0.0) || !(hp.noise_variance > 0.0) ||
      !(hp.lengthscales.array() > 0.0).all()) {
    throw DomainError("GPR hyperparameters must be strictly positive");
  }
}

// Scaled inputs x / l, so that r is a plain Euclidean distance.
Eigen::MatrixXd scaled(const Eigen::MatrixXd& x, const GprHyperparameters& hp) {
  return x * hp.lengthscales.cwiseInverse().asDiagonal();
}

Eigen::MatrixXd scaled_distances(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd r(a.rows(), b.rows());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < b.rows(); ++j) {
      r(i, j) = (a.row(i) - b.row(j)).norm();
    }
  }
  return r;
}

struct Factor {
  Eigen::LLT<Eigen::MatrixXd> llt;
  double jitter = 0.0;
};

Factor factorize(Eigen::MatrixXd kn) {
  const double mean_diag = kn.diagonal().mean();
  Factor f;
  f.llt.compute(kn);
  if (f.llt.info() == Eigen::Success) {
    return f;
  }
  for (double rel = 1e-10; rel <= 1e-4 * (1.0 + 1e-9); rel *= 10.0) {
    const double j = rel * mean_diag;
    kn.diagonal().array() += j - f.jitter;
    f.jitter = j;
    f.llt.compute(kn);
    if (f.llt.info() == Eigen::Success) {
      return f;
    }
  }
  throw ConditioningError("kernel matrix is not positive definite even with jitter 1e-4 * mean(diag)");
}

}  // namespace

double matern32(double r, double lengthscale) {
  if (!(r >= 0.0)) {
    throw DomainError("Matern distance must be non-negative");
  }
  if (!(lengthscale > 0.0)) {
    throw DomainError("Matern lengthscale must be positive");
  }
  const double s = kSqrt3 * r / lengthscale;
  return (1.0 + s) * std::exp(-s);
}

Eigen::VectorXd GprHyperparameters::to_log() const {
  Eigen::VectorXd t(lengthscales.size() + 2);
  t.head(lengthscales.size()) = lengthscales.array().log().matrix();
  t(lengthscales.size()) = std::log(signal_variance);
  t(lengthscales.size() + 1) = std::log(noise_variance);
  return t;
}

GprHyperparameters GprHyperparameters::from_log(const Eigen::VectorXd& theta) {
  if (theta.size() < 3) {
    throw DimensionError("log-hyperparameter vector needs at least 3 entries");
  }
  const Eigen::Index d = theta.size() - 2;
  GprHyperparameters hp;
  hp.lengthscales = theta.head(d).array().exp().matrix();
  hp.signal_variance = std::exp(theta(d));
  hp.noise_variance = std::exp(theta(d + 1));
  return hp;
}

Eigen::MatrixXd kernel_matrix(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                              const GprHyperparameters& hp) {
  if (a.cols() != hp.lengthscales.size() || b.cols() != hp.lengthscales.size()) {
    throw DimensionError("kernel inputs do not match the lengthscale count");
  }
  check_hp(hp);
  const Eigen::MatrixXd r = scaled_distances(scaled(a, hp), scaled(b, hp));
  return hp.signal_variance *
         r.unaryExpr([](double v) { return (1.0 + kSqrt3 * v) * std::exp(-kSqrt3 * v); });
}

LmlResult gpr_log_marginal_likelihood(const GprHyperparameters& hp, const Eigen::MatrixXd& x,
                                      const Eigen::VectorXd& y, double prior_mean,
                                      bool with_gradient) {
  check_shapes(x, y, hp);
  check_hp(hp);
  const Eigen::Index n = x.rows();
  const Eigen::Index d = x.cols();
  const Eigen::MatrixXd xs = scaled(x, hp);
  const Eigen::MatrixXd r = scaled_distances(xs, xs);
  const Eigen::MatrixXd e = r.unaryExpr([](double v) { return std::exp(-kSqrt3 * v); });
  Eigen::MatrixXd k = hp.signal_variance * ((1.0 + kSqrt3 * r.array()) * e.array()).matrix();
  Eigen::MatrixXd kn = k;
  kn.diagonal().array() += hp.noise_variance;
  const Factor fac = factorize(kn);
  const Eigen::VectorXd resid = y.array() - prior_mean;
  const Eigen::VectorXd alpha = fac.llt.solve(resid);
  const Eigen::MatrixXd& l = fac.llt.matrixLLT();
  const double logdet = 2.0 * l.diagonal().array().log().sum();

  LmlResult out;
  out.jitter = fac.jitter;
  out.value = -0.5 * resid.dot(alpha) - 0.5 * logdet -
              0.5 * static_cast<double>(n) * std::log(2.0 * std::numbers::pi);
  if (!with_gradient) {
    return out;
  }
  // W = alpha alpha^T - K_n^-1; dLML/dtheta = 0.5 tr(W dK/dtheta).
  Eigen::MatrixXd linv = Eigen::MatrixXd::Identity(n, n);
  fac.llt.matrixL().solveInPlace(linv);
  // K_n^-1 = L^-T L^-1 as a symmetric rank update, mirrored to the upper half.
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  w.selfadjointView<Eigen::Lower>().rankUpdate(linv.transpose(), -1.0);
  for (Eigen::Index b = 1; b < n; ++b) {
    for (Eigen::Index a = 0; a < b; ++a) w(a, b) = w(b, a);
  }
  w.noalias() += alpha * alpha.transpose();

  out.gradient.resize(d + 2);
  const Eigen::MatrixXd we = w.cwiseProduct(e) * (3.0 * hp.signal_variance);
  for (Eigen::Index j = 0; j < d; ++j) {
    double acc = 0.0;
    for (Eigen::Index b = 0; b < n; ++b) {
      const double xb = xs(b, j);
      for (Eigen::Index a = 0; a < n; ++a) {
        const double delta = xs(a, j) - xb;
        acc += we(a, b) * delta * delta;
      }
    }
    out.gradient(j) = 0.5 * acc;
  }
  out.gradient(d) = 0.5 * w.cwiseProduct(k).sum();
  out.gradient(d + 1) = 0.5 * hp.noise_variance * w.trace();
  return out;
}

GprModel gpr_condition(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                       const GprHyperparameters& hp, double prior_mean) {
  check_shapes(x, y, hp);
  Eigen::MatrixXd kn = kernel_matrix(x, x, hp);
  kn.diagonal().array() += hp.noise_variance;
  const Factor fac = factorize(kn);
  GprModel m;
  m.hp = hp;
  m.prior_mean = prior_mean;
  m.x_train = x;
  m.y_train = y;
  m.jitter = fac.jitter;
  m.chol_lower = fac.llt.matrixL();
  m.alpha = fac.llt.solve((y.array() - prior_mean).matrix());
  const Eigen::VectorXd resid = y.array() - prior_mean;
  m.lml = -0.5 * resid.dot(m.alpha) - m.chol_lower.diagonal().array().log().sum() -
          0.5 * static_cast<double>(x.rows()) * std::log(2.0 * std::numbers::pi);
  return m;
}

GprModel gpr_fit(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                 const GprFitOptions& options) {
  const Eigen::Index d = x.cols();
  if (d < 1) {
    throw DimensionError("GPR needs at least one input column");
  }
  if (x.rows() > 5000) {
    throw DomainError("exact GPR is limited to 5000 training points");
  }
  if (options.restarts < 1) {
    throw ConfigError("GPR needs at least one restart");
  }
  if (x.rows() != y.size()) {
    throw DimensionError("GPR inputs have " + std::to_string(x.rows()) + " rows but " +
                         std::to_string(y.size()) + " targets");
  }
  if (!x.allFinite() || !y.allFinite()) {
    throw DomainError("GPR inputs contain NaN or infinite values");
  }
  const GprBounds& bd = options.bounds;
  Eigen::VectorXd lo(d + 2);
  Eigen::VectorXd hi(d + 2);
  lo.head(d).setConstant(std::log(bd.min_lengthscale));
  hi.head(d).setConstant(std::log(bd.max_lengthscale));
  lo(d) = std::log(bd.min_signal_variance);
  hi(d) = std::log(bd.max_signal_variance);
  lo(d + 1) = std::log(bd.min_noise_variance);
  hi(d + 1) = std::log(bd.max_noise_variance);
  if (options.fixed_noise_variance) {
    lo(d + 1) = hi(d + 1) = std::log(*options.fixed_noise_variance);
  }

  const double var_y = std::max((y.array() - y.mean()).square().mean(), 1e-6);
  const Objective objective = [&](const Eigen::VectorXd& t, Eigen::VectorXd* grad) {
    const LmlResult r = gpr_log_marginal_likelihood(GprHyperparameters::from_log(t), x, y,
                                                    options.prior_mean, grad != nullptr);
    if (grad != nullptr) {
      *grad = -r.gradient;
    }
    return -r.value;
  };

  std::vector<RestartRecord> records;
  int best = -1;
  double best_lml = -std::numeric_limits<double>::infinity();
  Eigen::VectorXd best_theta;
  for (int r = 0; r < options.restarts; ++r) {
    Rng rng(derive_seed(options.seed, "gpr-restart-" + std::to_string(r)));
    Eigen::VectorXd t0(d + 2);
    const double a = std::log(options.init_lengthscale_lo);
    const double b = std::log(options.init_lengthscale_hi);
    for (Eigen::Index j = 0; j < d; ++j) {
      t0(j) = rng.uniform(a, b);
    }
    t0(d) = std::log(var_y);
    t0(d + 1) = options.fixed_noise_variance ? std::log(*options.fixed_noise_variance)
                                             : std::log(0.1 * var_y);
    RestartRecord rec;
    rec.index = r;
    try {
      const BfgsResult res = minimize_bounded(objective, t0, lo, hi, options.optimizer);
      rec.ok = true;
      rec.lml = -res.f;
      rec.iterations = res.iterations;
      rec.message = res.message;
      if (rec.lml > best_lml) {
        best_lml = rec.lml;
        best = r;
        best_theta = res.x;
      }
    } catch (const Error& e) {
      rec.ok = false;
      rec.message = e.what();
    }
    records.push_back(rec);
  }
  if (best < 0) {
    throw ConvergenceError("every GPR restart failed", 0.0);
  }
  GprModel m = gpr_condition(x, y, GprHyperparameters::from_log(best_theta), options.prior_mean);
  m.restarts = std::move(records);
  m.best_restart = best;
  return m;
}

GprPrediction gpr_predict(const GprModel& model, const Eigen::MatrixXd& x_star) {
  if (x_star.cols() != model.x_train.cols()) {
    throw DimensionError("GPR model expects " + std::to_string(model.x_train.cols()) +
                         " input columns, got " + std::to_string(x_star.cols()));
  }
  const Eigen::MatrixXd ks = kernel_matrix(model.x_train, x_star, model.hp);
  GprPrediction p;
  p.mean = (ks.transpose() * model.alpha).array() + model.prior_mean;
  const Eigen::MatrixXd v =
      model.chol_lower.triangularView<Eigen::Lower>().solve(ks);
  p.variance = (model.hp.signal_variance - v.colwise().squaredNorm().array()).matrix();
  Eigen::Index clamped = 0;
  for (Eigen::Index i = 0; i < p.variance.size(); ++i) {
    if (p.variance(i) < 0.0) {
      if (p.variance(i) < -1e-10) {
        ++clamped;
      }
      p.variance(i) = 0.0;
    }
  }
  if (clamped > 0) {
    p.warnings.push_back(std::to_string(clamped) +
                         " predictive variances below -1e-10 were clamped to 0");
  }
  return p;
}

}  // namespace irops::featsel
