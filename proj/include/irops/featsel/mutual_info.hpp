#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "irops/flight_data/feature_matrix.hpp"

namespace irops::featsel {

inline constexpr int kDefaultNeighbours = 3;
inline constexpr double kMiJitter = 1e-10;

/// Kraskov-Stoegbauer-Grassberger estimator (first variant) of I(X;Y) in nats.
///
/// Both variables are scaled to unit variance and perturbed by Gaussian
/// noise of standard deviation 1e-10 to break distance ties. The noise seed
/// is derived from `seed` and the contents of each vector, so swapping the
/// arguments or passing two identical columns reproduces the same noise.
/// Requires n >= 3k. A constant vector yields 0 and appends to `warning`.
double mi_ksg(std::span<const double> x, std::span<const double> y, int k = kDefaultNeighbours,
              std::uint64_t seed = 0, std::string* warning = nullptr);

struct MirEntry {
  std::string name;
  double mi_nats = 0.0;
};

/// Scores sorted by descending mi, ties by ascending name.
struct MirScores {
  std::vector<MirEntry> entries;
  int k_neighbors = kDefaultNeighbours;
  std::vector<std::string> warnings;
};

/// Scores every column of `x` except `target` against the target column.
/// Throws LookupError("target feature not found: ...") when it is absent.
MirScores mir_rank(const FeatureMatrix& x, const std::string& target,
                   int k = kDefaultNeighbours, std::uint64_t seed = 0);

/// Scores every column of `features` against an external target vector.
/// Throws DomainError when a column is named `target_name`.
MirScores mir_rank(const FeatureMatrix& features, std::span<const double> y,
                   const std::string& target_name, int k = kDefaultNeighbours,
                   std::uint64_t seed = 0);

struct FeatureSubset {
  std::vector<std::string> names;
  std::size_t k = 0;
};

/// First k entries of the ranking. Requires 1 <= k <= feature count.
FeatureSubset select_top_k(const MirScores& scores, std::size_t k);

}  // namespace irops::featsel
