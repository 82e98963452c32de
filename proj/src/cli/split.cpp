#include "irops/cli/split.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "irops/core/error.hpp"
#include "irops/core/rng.hpp"

namespace irops::cli {

SplitIndices split_indices(std::size_t n, double fraction, std::uint64_t seed) {
  if (n < 10) {
    throw DomainError("train/test split needs at least 10 rows, got " + std::to_string(n));
  }
  if (!(fraction > 0.0 && fraction < 1.0)) {
    throw ConfigError("split fraction must lie in (0, 1)");
  }
  const auto n_train = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(n)));
  if (n_train == 0 || n_train == n) {
    throw DomainError("split fraction leaves an empty train or test set");
  }
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  Rng rng(seed);
  for (std::size_t i = n - 1; i > 0; --i) {
    std::swap(idx[i], idx[rng.index(i + 1)]);
  }
  SplitIndices s;
  s.train.assign(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(n_train));
  s.test.assign(idx.begin() + static_cast<std::ptrdiff_t>(n_train), idx.end());
  return s;
}

std::pair<FeatureMatrix, FeatureMatrix> split_train_test(const FeatureMatrix& x, double fraction,
                                                         std::uint64_t seed) {
  const SplitIndices s = split_indices(static_cast<std::size_t>(x.rows()), fraction, seed);
  return {x.select_rows(s.train), x.select_rows(s.test)};
}

}  // namespace irops::cli
