#include "irops/features/yeo_johnson.hpp"

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

#include "irops/core/error.hpp"

namespace irops::features {

namespace {

constexpr double kLambdaEps = 1e-12;

}  // namespace

double yeo_johnson(double x, double lambda) noexcept {
  if (x >= 0.0) {
    const double l = std::log1p(x);
    return std::abs(lambda) < kLambdaEps ? l : std::expm1(lambda * l) / lambda;
  }
  const double l = std::log1p(-x);
  const double p = 2.0 - lambda;
  return std::abs(p) < kLambdaEps ? -l : -std::expm1(p * l) / p;
}

double yeo_johnson_inverse(double y, double lambda) noexcept {
  if (y >= 0.0) {
    return std::abs(lambda) < kLambdaEps ? std::expm1(y)
                                         : std::expm1(std::log1p(lambda * y) / lambda);
  }
  const double p = 2.0 - lambda;
  return std::abs(p) < kLambdaEps ? -std::expm1(-y) : -std::expm1(std::log1p(-p * y) / p);
}

double yeo_johnson_log_likelihood(std::span<const double> x, double lambda) {
  const auto n = static_cast<double>(x.size());
  double mean = 0.0;
  for (const double v : x) {
    mean += yeo_johnson(v, lambda);
  }
  mean /= n;
  double ss = 0.0;
  double jacobian = 0.0;
  for (const double v : x) {
    const double d = yeo_johnson(v, lambda) - mean;
    ss += d * d;
    jacobian += std::copysign(std::log1p(std::abs(v)), v);
  }
  const double var = ss / n;
  if (!(var > 0.0) || !std::isfinite(var)) {
    return -std::numeric_limits<double>::infinity();
  }
  return -0.5 * n * std::log(var) + (lambda - 1.0) * jacobian;
}

double fit_yeo_johnson_lambda(std::span<const double> x) {
  if (x.size() < 3) {
    throw DomainError("Yeo-Johnson lambda needs at least three values");
  }
  const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
  if (*lo == *hi) {
    throw DomainError("Yeo-Johnson lambda is undefined for a constant column");
  }
  const auto negative_ll = [x](double lambda) {
    const double ll = yeo_johnson_log_likelihood(x, lambda);
    return std::isfinite(ll) ? -ll : std::numeric_limits<double>::max();
  };
  // Half the mantissa is the attainable precision for a smooth minimum.
  const int bits = std::numeric_limits<double>::digits / 2;
  const auto [lambda, value] = boost::math::tools::brent_find_minima(
      negative_ll, kYeoJohnsonLambdaMin, kYeoJohnsonLambdaMax, bits);
  // Brent never evaluates the bracket ends; an optimum on the boundary shows up
  // as a value just inside it.
  double best = lambda;
  double best_value = value;
  for (const double edge : {kYeoJohnsonLambdaMin, kYeoJohnsonLambdaMax}) {
    const double v = negative_ll(edge);
    if (v < best_value) {
      best = edge;
      best_value = v;
    }
  }
  return best;
}

}  // namespace irops::features
