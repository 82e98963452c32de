#pragma once

#include <span>

namespace irops::features {

inline constexpr double kYeoJohnsonLambdaMin = -5.0;
inline constexpr double kYeoJohnsonLambdaMax = 5.0;

/// Yeo-Johnson power transform; strictly increasing in x for every lambda.
double yeo_johnson(double x, double lambda) noexcept;
double yeo_johnson_inverse(double y, double lambda) noexcept;

/// Profile Gaussian log-likelihood of the transformed sample (variance at its
/// MLE, additive constants dropped), including the Jacobian term.
double yeo_johnson_log_likelihood(std::span<const double> x, double lambda);

/// Maximum-likelihood lambda on [-5, 5] by Brent's bracketed search.
/// Throws DomainError for fewer than three values or a constant column.
double fit_yeo_johnson_lambda(std::span<const double> x);

}  // namespace irops::features
