#pragma once

#include <span>
#include <vector>

namespace irops::featsel {

struct QqPair {
  double position = 0.0;     ///< Blom plotting position (i - 3/8) / (n + 1/4)
  double theoretical = 0.0;  ///< standard normal quantile at `position`
  double observed = 0.0;     ///< i-th smallest standardized error
};

/// Standardized errors (y - mean) / sqrt(var + noise_variance), sorted and
/// paired with normal quantiles. Throws DimensionError on length mismatch
/// and DomainError when var + noise_variance is not positive.
std::vector<QqPair> sme_qq(std::span<const double> pred_mean, std::span<const double> pred_var,
                           std::span<const double> y_test, double noise_variance = 0.0);

/// Largest |observed - theoretical| over pairs whose plotting position lies
/// in [p_lo, p_hi]. The default covers every pair.
double qq_max_gap(const std::vector<QqPair>& pairs, double p_lo = 0.0, double p_hi = 1.0);

/// Shape of the QQ curve summarised by least-squares slopes over `bins`
/// equal-count groups of the central pairs (positions within [p_lo, p_hi]).
struct QqTrend {
  std::vector<double> bin_slopes;
  double slope_rank_correlation = 0.0;  ///< Spearman rho of slope vs bin index
  double slope_ratio = 1.0;             ///< last-bin slope over first-bin slope
};

QqTrend qq_trend(const std::vector<QqPair>& pairs, int bins = 6, double p_lo = 0.025,
                 double p_hi = 0.975);

/// A QQ curve bends monotonically when its bin slopes rise (or fall) in rank
/// order and the outer bins differ by at least `min_ratio`.
bool qq_monotone_deviation(const QqTrend& trend, double min_rank_correlation = 0.8,
                           double min_ratio = 1.5);

}  // namespace irops::featsel
