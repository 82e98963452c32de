#include "irops/featsel/bounded_bfgs.hpp"

#include <cmath>
#include <limits>

#include "irops/core/error.hpp"

namespace irops::featsel {

namespace {

Eigen::VectorXd project(const Eigen::VectorXd& x, const Eigen::VectorXd& lo,
                        const Eigen::VectorXd& hi) {
  return x.cwiseMax(lo).cwiseMin(hi);
}

}  // namespace

BfgsResult minimize_bounded(const Objective& f, Eigen::VectorXd x0, const Eigen::VectorXd& lower,
                            const Eigen::VectorXd& upper, const BfgsOptions& options) {
  const Eigen::Index n = x0.size();
  if (lower.size() != n || upper.size() != n) {
    throw DimensionError("bound vectors do not match the parameter count");
  }
  BfgsResult res;
  res.x = project(x0, lower, upper);
  Eigen::VectorXd g(n);
  res.f = f(res.x, &g);
  res.evaluations = 1;
  if (!std::isfinite(res.f) || !g.allFinite()) {
    throw ConvergenceError("objective is not finite at the start point", res.f);
  }
  Eigen::MatrixXd h = Eigen::MatrixXd::Identity(n, n);

  for (res.iterations = 0; res.iterations < options.max_iterations; ++res.iterations) {
    Eigen::VectorXd pg = g;
    std::vector<bool> frozen(static_cast<std::size_t>(n), false);
    for (Eigen::Index i = 0; i < n; ++i) {
      const bool at_lo = res.x(i) <= lower(i) && g(i) > 0.0;
      const bool at_hi = res.x(i) >= upper(i) && g(i) < 0.0;
      if (at_lo || at_hi || lower(i) == upper(i)) {
        frozen[static_cast<std::size_t>(i)] = true;
        pg(i) = 0.0;
      }
    }
    if (pg.lpNorm<Eigen::Infinity>() < options.gradient_tolerance) {
      res.converged = true;
      res.message = "projected gradient below tolerance";
      return res;
    }
    Eigen::VectorXd d = -(h * pg);
    for (Eigen::Index i = 0; i < n; ++i) {
      if (frozen[static_cast<std::size_t>(i)]) {
        d(i) = 0.0;
      }
    }
    if (d.dot(pg) >= 0.0) {
      h.setIdentity();
      d = -pg;
    }
    const double big = d.lpNorm<Eigen::Infinity>();
    if (big > options.max_step) {
      d *= options.max_step / big;
    }

    double t = 1.0;
    bool accepted = false;
    Eigen::VectorXd xn;
    double fn = std::numeric_limits<double>::infinity();
    for (int b = 0; b < options.max_backtracks; ++b, t *= 0.5) {
      xn = project(res.x + t * d, lower, upper);
      const double decrease = g.dot(xn - res.x);
      try {
        fn = f(xn, nullptr);
      } catch (const Error&) {
        fn = std::numeric_limits<double>::infinity();
      }
      ++res.evaluations;
      if (std::isfinite(fn) && fn <= res.f + options.armijo * decrease) {
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      res.converged = true;
      res.message = "line search made no progress";
      return res;
    }
    Eigen::VectorXd gn(n);
    fn = f(xn, &gn);
    ++res.evaluations;
    if (!std::isfinite(fn) || !gn.allFinite()) {
      throw ConvergenceError("non-finite gradient during optimisation", fn);
    }
    const Eigen::VectorXd s = xn - res.x;
    const Eigen::VectorXd yv = gn - g;
    const double sy = s.dot(yv);
    const double f_old = res.f;
    res.x = xn;
    res.f = fn;
    g = gn;
    if (sy > 1e-12 * s.norm() * yv.norm()) {
      const double rho = 1.0 / sy;
      const Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n) - rho * s * yv.transpose();
      h = v * h * v.transpose() + rho * s * s.transpose();
    }
    if (std::fabs(f_old - fn) <= options.relative_f_tolerance * (1.0 + std::fabs(fn))) {
      res.converged = true;
      res.message = "relative change in objective below tolerance";
      ++res.iterations;
      return res;
    }
  }
  res.message = "iteration limit reached";
  return res;
}

}  // namespace irops::featsel
