#pragma once

#include <Eigen/Dense>

#include <map>
#include <span>
#include <string>
#include <vector>

namespace irops::features {

struct OneHotEncoding {
  Eigen::MatrixXd indicators;       ///< n x k, exactly one 1 per row
  std::vector<std::string> names;   ///< k distinct labels, lexicographic
};

/// Throws EmptyInputError on an empty column.
OneHotEncoding one_hot(std::span<const std::string> labels);

/// Seat count for an aircraft model code. Codes with the same seat count
/// encode identically. Throws LookupError listing the known codes.
int aircraft_seats(const std::string& code, const std::map<std::string, int>& seat_map);

}  // namespace irops::features
