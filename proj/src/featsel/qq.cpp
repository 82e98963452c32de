#include "irops/featsel/qq.hpp"

#include <boost/math/distributions/normal.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "irops/core/error.hpp"

namespace irops::featsel {

std::vector<QqPair> sme_qq(std::span<const double> pred_mean, std::span<const double> pred_var,
                           std::span<const double> y_test, double noise_variance) {
  if (pred_mean.size() != y_test.size() || pred_var.size() != y_test.size()) {
    throw DimensionError("QQ inputs differ in length");
  }
  if (y_test.empty()) {
    throw EmptyInputError("QQ needs at least one test point");
  }
  const std::size_t n = y_test.size();
  std::vector<double> e(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double s2 = pred_var[i] + noise_variance;
    if (!(s2 > 0.0)) {
      throw DomainError("predictive variance plus noise must be positive");
    }
    e[i] = (y_test[i] - pred_mean[i]) / std::sqrt(s2);
  }
  std::sort(e.begin(), e.end());
  const boost::math::normal_distribution<double> z;
  std::vector<QqPair> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double p = (static_cast<double>(i + 1) - 0.375) / (static_cast<double>(n) + 0.25);
    out[i] = {p, boost::math::quantile(z, p), e[i]};
  }
  return out;
}

double qq_max_gap(const std::vector<QqPair>& pairs, double p_lo, double p_hi) {
  double gap = 0.0;
  for (const auto& q : pairs) {
    if (q.position >= p_lo && q.position <= p_hi) {
      gap = std::max(gap, std::fabs(q.observed - q.theoretical));
    }
  }
  return gap;
}

namespace {

std::vector<double> ranks(const std::vector<double>& v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) {
      ++j;
    }
    const double avg = 0.5 * static_cast<double>(i + j);
    for (std::size_t t = i; t <= j; ++t) {
      r[idx[t]] = avg;
    }
    i = j + 1;
  }
  return r;
}

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
  const auto n = static_cast<double>(a.size());
  const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
  const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
  double sab = 0.0;
  double saa = 0.0;
  double sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  return (saa > 0.0 && sbb > 0.0) ? sab / std::sqrt(saa * sbb) : 0.0;
}

}  // namespace

QqTrend qq_trend(const std::vector<QqPair>& pairs, int bins, double p_lo, double p_hi) {
  if (bins < 2) {
    throw DomainError("QQ trend needs at least 2 bins");
  }
  std::vector<QqPair> central;
  for (const auto& q : pairs) {
    if (q.position >= p_lo && q.position <= p_hi) {
      central.push_back(q);
    }
  }
  const auto nb = static_cast<std::size_t>(bins);
  if (central.size() < 2 * nb) {
    throw DomainError("QQ trend needs at least 2 central points per bin, got " +
                      std::to_string(central.size()) + " points for " + std::to_string(bins) +
                      " bins");
  }
  QqTrend t;
  for (std::size_t b = 0; b < nb; ++b) {
    const std::size_t lo = b * central.size() / nb;
    const std::size_t hi = (b + 1) * central.size() / nb;
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
      mx += central[i].theoretical;
      my += central[i].observed;
    }
    const auto m = static_cast<double>(hi - lo);
    mx /= m;
    my /= m;
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
      sxy += (central[i].theoretical - mx) * (central[i].observed - my);
      sxx += (central[i].theoretical - mx) * (central[i].theoretical - mx);
    }
    t.bin_slopes.push_back(sxx > 0.0 ? sxy / sxx : 0.0);
  }
  std::vector<double> index(nb);
  std::iota(index.begin(), index.end(), 0.0);
  t.slope_rank_correlation = pearson(ranks(t.bin_slopes), index);
  const double first = t.bin_slopes.front();
  const double last = t.bin_slopes.back();
  t.slope_ratio = first != 0.0 ? last / first : std::numeric_limits<double>::infinity();
  return t;
}

bool qq_monotone_deviation(const QqTrend& trend, double min_rank_correlation, double min_ratio) {
  const bool rising = trend.slope_rank_correlation >= min_rank_correlation &&
                      trend.slope_ratio >= min_ratio;
  const bool falling = trend.slope_rank_correlation <= -min_rank_correlation &&
                       trend.slope_ratio > 0.0 && trend.slope_ratio <= 1.0 / min_ratio;
  return rising || falling;
}

}  // namespace irops::featsel
