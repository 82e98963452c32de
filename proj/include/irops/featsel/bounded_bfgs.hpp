#pragma once

#include <Eigen/Dense>

#include <functional>
#include <string>

namespace irops::featsel {

/// Objective returning f(x) and, when `grad` is non-null, writing df/dx.
/// May throw irops::Error for points where it is undefined; the line search
/// treats such points as +infinity.
using Objective = std::function<double(const Eigen::VectorXd& x, Eigen::VectorXd* grad)>;

struct BfgsOptions {
  int max_iterations = 100;
  double gradient_tolerance = 1e-5;  ///< on the projected gradient, infinity norm
  double relative_f_tolerance = 1e-9;
  double max_step = 2.0;             ///< largest coordinate move per iteration
  double armijo = 1e-4;
  int max_backtracks = 30;
};

struct BfgsResult {
  Eigen::VectorXd x;
  double f = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
  std::string message;
};

/// Minimises f over the box [lower, upper] by projected BFGS with Armijo
/// backtracking. Coordinates pinned at a bound with the gradient pointing
/// outward are frozen for the iteration. Throws ConvergenceError when the
/// objective is not finite at the start point.
BfgsResult minimize_bounded(const Objective& f, Eigen::VectorXd x0, const Eigen::VectorXd& lower,
                            const Eigen::VectorXd& upper, const BfgsOptions& options = {});

}  // namespace irops::featsel
