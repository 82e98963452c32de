#include "irops/featsel/mutual_info.hpp"

#include <boost/math/special_functions/digamma.hpp>

#include <algorithm>
#include <cmath>
#include <string_view>

#include "irops/core/error.hpp"
#include "irops/core/rng.hpp"

namespace irops::featsel {

namespace {

// Unit-variance copy plus content-seeded jitter; empty when the input is constant.
std::vector<double> prepare(std::span<const double> v, std::uint64_t seed) {
  const auto n = static_cast<double>(v.size());
  double mean = 0.0;
  for (double a : v) {
    if (!std::isfinite(a)) {
      throw DomainError("mutual information input contains NaN or infinite values");
    }
    mean += a;
  }
  mean /= n;
  double ss = 0.0;
  for (double a : v) {
    ss += (a - mean) * (a - mean);
  }
  const double sd = std::sqrt(ss / n);
  if (!(sd > 0.0)) {
    return {};
  }
  const std::string_view bytes(reinterpret_cast<const char*>(v.data()), v.size() * sizeof(double));
  Rng rng(derive_seed(seed, bytes));
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = (v[i] - mean) / sd + kMiJitter * rng.normal();
  }
  return out;
}

}  // namespace

double mi_ksg(std::span<const double> x, std::span<const double> y, int k, std::uint64_t seed,
              std::string* warning) {
  if (x.size() != y.size()) {
    throw DimensionError("mutual information inputs differ in length: " +
                         std::to_string(x.size()) + " vs " + std::to_string(y.size()));
  }
  if (k < 1) {
    throw DomainError("k must be at least 1");
  }
  const std::size_t n = x.size();
  if (n < 3 * static_cast<std::size_t>(k)) {
    throw DomainError("mutual information needs n >= 3k, got n = " + std::to_string(n));
  }
  const std::vector<double> a = prepare(x, seed);
  const std::vector<double> b = prepare(y, seed);
  if (a.empty() || b.empty()) {
    if (warning != nullptr) {
      *warning = "constant input vector; mutual information set to 0";
    }
    return 0.0;
  }

  std::vector<double> dist(n);
  double acc = 0.0;
  const auto kk = static_cast<std::ptrdiff_t>(k);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t t = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) {
        dist[t++] = std::max(std::fabs(a[i] - a[j]), std::fabs(b[i] - b[j]));
      }
    }
    std::nth_element(dist.begin(), dist.begin() + (kk - 1), dist.begin() + static_cast<std::ptrdiff_t>(n - 1));
    const double eps = dist[static_cast<std::size_t>(k - 1)];
    std::size_t nx = 0;
    std::size_t ny = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) {
        continue;
      }
      nx += std::fabs(a[i] - a[j]) < eps ? 1U : 0U;
      ny += std::fabs(b[i] - b[j]) < eps ? 1U : 0U;
    }
    acc += boost::math::digamma(static_cast<double>(nx + 1)) +
           boost::math::digamma(static_cast<double>(ny + 1));
  }
  const double mi = boost::math::digamma(static_cast<double>(n)) +
                    boost::math::digamma(static_cast<double>(k)) - acc / static_cast<double>(n);
  return std::max(0.0, mi);
}

namespace {

void sort_scores(MirScores& s) {
  std::sort(s.entries.begin(), s.entries.end(), [](const MirEntry& l, const MirEntry& r) {
    if (l.mi_nats != r.mi_nats) {
      return l.mi_nats > r.mi_nats;
    }
    return l.name < r.name;
  });
}

std::vector<double> column(const FeatureMatrix& fm, Eigen::Index j) {
  std::vector<double> v(static_cast<std::size_t>(fm.rows()));
  for (Eigen::Index i = 0; i < fm.rows(); ++i) {
    v[static_cast<std::size_t>(i)] = fm.values(i, j);
  }
  return v;
}

}  // namespace

MirScores mir_rank(const FeatureMatrix& features, std::span<const double> y,
                   const std::string& target_name, int k, std::uint64_t seed) {
  if (features.column_index(target_name)) {
    throw DomainError("target '" + target_name + "' is among the candidate features");
  }
  if (static_cast<std::size_t>(features.rows()) != y.size()) {
    throw DimensionError("target length does not match the feature matrix");
  }
  MirScores s;
  s.k_neighbors = k;
  for (Eigen::Index j = 0; j < features.cols(); ++j) {
    const std::vector<double> x = column(features, j);
    std::string warning;
    const double mi = mi_ksg(x, y, k, seed, &warning);
    const std::string& name = features.descriptors[static_cast<std::size_t>(j)].name;
    if (!warning.empty()) {
      s.warnings.push_back(name + ": " + warning);
    }
    s.entries.push_back({name, mi});
  }
  sort_scores(s);
  return s;
}

MirScores mir_rank(const FeatureMatrix& x, const std::string& target, int k, std::uint64_t seed) {
  const auto idx = x.column_index(target);
  if (!idx) {
    throw LookupError("target feature not found: '" + target + "'");
  }
  const std::vector<double> y = column(x, *idx);
  return mir_rank(x.drop_column(target), y, target, k, seed);
}

FeatureSubset select_top_k(const MirScores& scores, std::size_t k) {
  if (k < 1 || k > scores.entries.size()) {
    throw DomainError("subset size " + std::to_string(k) + " outside [1, " +
                      std::to_string(scores.entries.size()) + "]");
  }
  FeatureSubset out;
  out.k = k;
  for (std::size_t i = 0; i < k; ++i) {
    out.names.push_back(scores.entries[i].name);
  }
  return out;
}

}  // namespace irops::featsel
