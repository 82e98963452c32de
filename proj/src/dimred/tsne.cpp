#include "irops/dimred/tsne.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "irops/core/error.hpp"
#include "irops/core/rng.hpp"

namespace irops::dimred {

namespace {

struct RowEntropy {
  double bits;
  std::vector<double> p;
};

// Entropy of exp(-beta * (d - d_min)) normalised, d already divided by the row mean.
RowEntropy row_entropy(std::span<const double> d, double d_min, double beta) {
  RowEntropy out{0.0, std::vector<double>(d.size())};
  double z = 0.0;
  double weighted = 0.0;
  for (std::size_t j = 0; j < d.size(); ++j) {
    const double shifted = d[j] - d_min;
    const double w = std::exp(-beta * shifted);
    out.p[j] = w;
    z += w;
    weighted += w * shifted;
  }
  for (double& v : out.p) {
    v /= z;
  }
  const double nats = std::log(z) + beta * weighted / z;
  out.bits = nats / std::numbers::ln2;
  return out;
}

}  // namespace

PerplexityCalibration perplexity_calibration(std::span<const double> sq_distances,
                                             double perplexity, double tolerance,
                                             int max_iterations) {
  const std::size_t k = sq_distances.size();
  if (k == 0) {
    throw EmptyInputError("perplexity calibration needs at least one neighbour");
  }
  if (!(perplexity >= 1.0) || !std::isfinite(perplexity)) {
    throw DomainError("perplexity must be a finite value >= 1");
  }
  const double target = std::log2(perplexity);
  const double mean = [&] {
    double s = 0.0;
    for (double v : sq_distances) {
      if (!(v >= 0.0) || !std::isfinite(v)) {
        throw DomainError("squared distances must be finite and non-negative");
      }
      s += v;
    }
    return s / static_cast<double>(k);
  }();
  const double scale = mean > 0.0 ? mean : 1.0;
  std::vector<double> d(k);
  for (std::size_t j = 0; j < k; ++j) {
    d[j] = sq_distances[j] / scale;
  }
  const double d_min = *std::min_element(d.begin(), d.end());
  const auto n_min = static_cast<double>(std::count(d.begin(), d.end(), d_min));

  // Reachable entropies lie in [log2(#nearest), log2(k)].
  if (target > std::log2(static_cast<double>(k)) + tolerance ||
      target < std::log2(n_min) - tolerance) {
    throw DomainError("perplexity " + std::to_string(perplexity) +
                      " is unattainable for a row with " + std::to_string(k) + " neighbours");
  }

  double beta = 1.0;
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();
  PerplexityCalibration out;
  RowEntropy cur = row_entropy(d, d_min, beta);
  int it = 0;
  for (; it < max_iterations; ++it) {
    const double diff = cur.bits - target;
    if (std::fabs(diff) < tolerance) {
      break;
    }
    if (diff > 0.0) {
      lo = beta;
      beta = std::isinf(hi) ? beta * 2.0 : 0.5 * (beta + hi);
    } else {
      hi = beta;
      beta = 0.5 * (beta + lo);
    }
    cur = row_entropy(d, d_min, beta);
  }
  if (std::fabs(cur.bits - target) >= tolerance) {
    throw ConvergenceError("perplexity search did not reach the target entropy", beta / scale);
  }
  out.beta = beta / scale;
  out.sigma = out.beta > 0.0 ? std::sqrt(1.0 / (2.0 * out.beta))
                             : std::numeric_limits<double>::infinity();
  out.probabilities = std::move(cur.p);
  out.entropy_bits = cur.bits;
  out.iterations = it;
  return out;
}

double TsneResult::post_exaggeration_kl() const {
  for (const auto& s : kl_trace) {
    if (s.iteration >= params.exaggeration_iters) {
      return s.kl;
    }
  }
  return kl_trace.front().kl;
}

Eigen::MatrixXd squared_distances(const Eigen::MatrixXd& x) {
  const Eigen::Index n = x.rows();
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double v = (x.row(i) - x.row(j)).squaredNorm();
      d(i, j) = v;
      d(j, i) = v;
    }
  }
  return d;
}

Eigen::MatrixXd joint_probabilities(const Eigen::MatrixXd& x, double perplexity) {
  const Eigen::Index n = x.rows();
  const Eigen::MatrixXd d = squared_distances(x);
  Eigen::MatrixXd cond = Eigen::MatrixXd::Zero(n, n);
  std::vector<double> row(static_cast<std::size_t>(n - 1));
  for (Eigen::Index i = 0; i < n; ++i) {
    std::size_t t = 0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j != i) {
        row[t++] = d(i, j);
      }
    }
    const auto cal = perplexity_calibration(row, perplexity);
    t = 0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j != i) {
        cond(i, j) = cal.probabilities[t++];
      }
    }
  }
  Eigen::MatrixXd p = (cond + cond.transpose()) / (2.0 * static_cast<double>(n));
  p /= p.sum();
  return p;
}

Eigen::MatrixXd student_t_similarities(const Eigen::MatrixXd& y) {
  const Eigen::Index n = y.rows();
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(n, n);
  double z = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double v = 1.0 / (1.0 + (y.row(i) - y.row(j)).squaredNorm());
      q(i, j) = v;
      q(j, i) = v;
      z += 2.0 * v;
    }
  }
  return q / z;
}

double kl_divergence(const Eigen::MatrixXd& p, const Eigen::MatrixXd& q) {
  if (p.rows() != q.rows() || p.cols() != q.cols()) {
    throw DimensionError("KL divergence needs matrices of equal shape");
  }
  double kl = 0.0;
  for (Eigen::Index i = 0; i < p.rows(); ++i) {
    for (Eigen::Index j = 0; j < p.cols(); ++j) {
      if (i != j && p(i, j) > 0.0) {
        kl += p(i, j) * std::log(p(i, j) / std::max(q(i, j), std::numeric_limits<double>::min()));
      }
    }
  }
  return std::max(0.0, kl);
}

Eigen::MatrixXd tsne_gradient(const Eigen::MatrixXd& p, const Eigen::MatrixXd& y,
                              double exaggeration) {
  const Eigen::Index n = y.rows();
  Eigen::MatrixXd num = Eigen::MatrixXd::Zero(n, n);
  double z = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double v = 1.0 / (1.0 + (y.row(i) - y.row(j)).squaredNorm());
      num(i, j) = v;
      num(j, i) = v;
      z += 2.0 * v;
    }
  }
  Eigen::MatrixXd grad = Eigen::MatrixXd::Zero(n, y.cols());
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j) {
        continue;
      }
      const double c = 4.0 * (exaggeration * p(i, j) - num(i, j) / z) * num(i, j);
      grad.row(i) += c * (y.row(i) - y.row(j));
    }
  }
  return grad;
}

namespace {

// Flat-buffer objective for the optimisation loop; symmetric pair sweep in a
// fixed order so the result does not depend on anything but the inputs.
struct Workspace {
  Eigen::Index n;
  std::vector<double> p;    // row-major n x n
  std::vector<double> num;  // row-major n x n
  std::vector<double> y;    // n x 2
  std::vector<double> grad;

  double compute(double exaggeration, bool want_grad) {
    double z = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double yi0 = y[2 * i];
      const double yi1 = y[2 * i + 1];
      for (Eigen::Index j = i + 1; j < n; ++j) {
        const double a = yi0 - y[2 * j];
        const double b = yi1 - y[2 * j + 1];
        const double v = 1.0 / (1.0 + a * a + b * b);
        num[i * n + j] = v;
        z += 2.0 * v;
      }
    }
    if (want_grad) {
      std::fill(grad.begin(), grad.end(), 0.0);
      const double inv_z = 1.0 / z;
      for (Eigen::Index i = 0; i < n; ++i) {
        const double yi0 = y[2 * i];
        const double yi1 = y[2 * i + 1];
        double g0 = 0.0;
        double g1 = 0.0;
        for (Eigen::Index j = i + 1; j < n; ++j) {
          const double v = num[i * n + j];
          const double c = 4.0 * (exaggeration * p[i * n + j] - v * inv_z) * v;
          const double a = c * (yi0 - y[2 * j]);
          const double b = c * (yi1 - y[2 * j + 1]);
          g0 += a;
          g1 += b;
          grad[2 * j] -= a;
          grad[2 * j + 1] -= b;
        }
        grad[2 * i] += g0;
        grad[2 * i + 1] += g1;
      }
    }
    return z;
  }

  double kl() {
    const double z = compute(1.0, false);
    double kl = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = i + 1; j < n; ++j) {
        const double pij = p[i * n + j];
        if (pij > 0.0) {
          const double q = std::max(num[i * n + j] / z, std::numeric_limits<double>::min());
          kl += 2.0 * pij * std::log(pij / q);
        }
      }
    }
    return std::max(0.0, kl);
  }
};

}  // namespace

TsneResult tsne_embed(const Eigen::MatrixXd& x, const TsneParams& params) {
  const Eigen::Index n = x.rows();
  if (n < 10) {
    throw DomainError("t-SNE needs at least 10 rows, got " + std::to_string(n));
  }
  if (!x.allFinite()) {
    throw DomainError("t-SNE input contains NaN or infinite entries");
  }
  const double max_perp = static_cast<double>(n - 1) / 3.0;
  if (params.perplexity < 2.0 || params.perplexity > max_perp) {
    throw DomainError("perplexity " + std::to_string(params.perplexity) + " outside [2, " +
                      std::to_string(max_perp) + "] for n = " + std::to_string(n));
  }
  if (params.n_iter < 1 || params.learning_rate <= 0.0 || params.kl_record_interval < 1) {
    throw ConfigError("t-SNE needs n_iter >= 1, learning_rate > 0, kl_record_interval >= 1");
  }
  bool all_same = true;
  for (Eigen::Index i = 1; i < n && all_same; ++i) {
    all_same = (x.row(i).array() == x.row(0).array()).all();
  }
  if (all_same) {
    throw DomainError("t-SNE input rows are all identical");
  }

  const Eigen::MatrixXd pm = joint_probabilities(x, params.perplexity);
  Workspace ws;
  ws.n = n;
  ws.p.resize(static_cast<std::size_t>(n * n));
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      ws.p[i * n + j] = pm(i, j);
    }
  }
  ws.num.assign(static_cast<std::size_t>(n * n), 0.0);
  ws.y.resize(static_cast<std::size_t>(2 * n));
  ws.grad.assign(static_cast<std::size_t>(2 * n), 0.0);
  Rng rng(params.seed);
  for (double& v : ws.y) {
    v = rng.normal(0.0, params.init_sd);
  }

  std::vector<double> update(ws.y.size(), 0.0);
  std::vector<double> gains(ws.y.size(), 1.0);
  TsneResult result;
  result.params = params;
  const auto record = [&](int iteration) {
    result.kl_trace.push_back({iteration, ws.kl()});
  };
  record(0);
  for (int it = 0; it < params.n_iter; ++it) {
    const double ex = it < params.exaggeration_iters ? params.early_exaggeration : 1.0;
    const double mom = it < params.momentum_switch_iter ? params.initial_momentum
                                                        : params.final_momentum;
    ws.compute(ex, true);
    for (std::size_t t = 0; t < ws.y.size(); ++t) {
      const bool same_sign = (ws.grad[t] > 0.0) == (update[t] > 0.0);
      gains[t] = same_sign ? std::max(gains[t] * 0.8, 0.01) : gains[t] + 0.2;
      update[t] = mom * update[t] - params.learning_rate * gains[t] * ws.grad[t];
      ws.y[t] += update[t];
    }
    double m0 = 0.0;
    double m1 = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      m0 += ws.y[2 * i];
      m1 += ws.y[2 * i + 1];
    }
    m0 /= static_cast<double>(n);
    m1 /= static_cast<double>(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      ws.y[2 * i] -= m0;
      ws.y[2 * i + 1] -= m1;
    }
    const int done = it + 1;
    if (done % params.kl_record_interval == 0 || done == params.exaggeration_iters ||
        done == params.n_iter) {
      record(done);
    }
  }
  result.embedding.resize(n, 2);
  for (Eigen::Index i = 0; i < n; ++i) {
    result.embedding(i, 0) = ws.y[2 * i];
    result.embedding(i, 1) = ws.y[2 * i + 1];
  }
  return result;
}

}  // namespace irops::dimred
