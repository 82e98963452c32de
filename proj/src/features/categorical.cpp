#include "irops/features/categorical.hpp"

#include <algorithm>

#include "irops/core/error.hpp"

namespace irops::features {

OneHotEncoding one_hot(std::span<const std::string> labels) {
  if (labels.empty()) {
    throw EmptyInputError("one-hot encoding needs a non-empty column");
  }
  OneHotEncoding enc;
  enc.names.assign(labels.begin(), labels.end());
  std::sort(enc.names.begin(), enc.names.end());
  enc.names.erase(std::unique(enc.names.begin(), enc.names.end()), enc.names.end());

  enc.indicators = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(labels.size()),
                                         static_cast<Eigen::Index>(enc.names.size()));
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const auto pos = std::lower_bound(enc.names.begin(), enc.names.end(), labels[i]);
    enc.indicators(static_cast<Eigen::Index>(i), pos - enc.names.begin()) = 1.0;
  }
  return enc;
}

int aircraft_seats(const std::string& code, const std::map<std::string, int>& seat_map) {
  const auto it = seat_map.find(code);
  if (it != seat_map.end()) {
    return it->second;
  }
  std::string known;
  for (const auto& [k, v] : seat_map) {
    known += (known.empty() ? "" : ", ") + k;
  }
  throw LookupError("unknown aircraft code '" + code + "' (known: " + known + ")");
}

}  // namespace irops::features
