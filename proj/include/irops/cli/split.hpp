#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "irops/flight_data/feature_matrix.hpp"

namespace irops::cli {

struct SplitIndices {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

/// Seeded Fisher-Yates shuffle of 0..n-1; the first floor(fraction * n)
/// indices train, the rest test. Requires n >= 10 and fraction in (0, 1)
/// with both parts non-empty.
SplitIndices split_indices(std::size_t n, double fraction, std::uint64_t seed);

std::pair<FeatureMatrix, FeatureMatrix> split_train_test(const FeatureMatrix& x, double fraction,
                                                         std::uint64_t seed);

}  // namespace irops::cli
