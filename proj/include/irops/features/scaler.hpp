#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "irops/core/keyed_text.hpp"
#include "irops/flight_data/feature_matrix.hpp"

namespace irops::features {

enum class ScalerMethod : std::uint8_t { Standard, Range, Power };

std::string_view to_string(ScalerMethod m) noexcept;
/// Accepts standard | range | power.
ScalerMethod parse_scaler_method(std::string_view s);

/// Fitted parameters for one column.
///  Standard: z = (x - mean) / sd (population sd)
///  Range:    z = (x - min) / (max - min)
///  Power:    z = (yj(x, lambda) - mean) / sd, mean/sd taken after the transform
/// A constant column maps to zeros and inverts back to its value.
struct ColumnScaling {
  std::string name;
  double mean = 0.0;
  double sd = 1.0;
  double min = 0.0;
  double max = 1.0;
  double lambda = 1.0;
  bool constant = false;
};

struct ScalerModel {
  ScalerMethod method = ScalerMethod::Standard;
  std::vector<ColumnScaling> columns;
  /// One entry per flagged column, e.g. constant columns passed through as zeros.
  std::vector<std::string> warnings;
};

/// Requires at least two rows (three for Power).
ScalerModel fit_scaler(const FeatureMatrix& x, ScalerMethod method);
/// Column names and count must match the model.
FeatureMatrix apply_scaler(const ScalerModel& model, const FeatureMatrix& x);
FeatureMatrix inverse_scaler(const ScalerModel& model, const FeatureMatrix& scaled);

/// Parameter file sufficient for an exact inverse (values in shortest round-trip form).
KeyedText scaler_to_keyed(const ScalerModel& model);
ScalerModel scaler_from_keyed(const KeyedText& doc);

}  // namespace irops::features
