#pragma once

#include <cstddef>
#include <map>
#include <string>

#include "irops/features/time_encoding.hpp"
#include "irops/flight_data/feature_matrix.hpp"
#include "irops/flight_data/flight_record.hpp"

namespace irops::features {

/// Label used for flights without a delay code.
inline constexpr std::string_view kNoDelayLabel = "No Delay";

struct EngineerOptions {
  ShiftSchedule shifts;
  std::map<std::string, int> seat_map;
  /// Keep the actual turnaround as the last column.
  bool include_target = true;
  /// Use the spherical distance instead of failing on nearly antipodal routes.
  bool vincenty_fallback = false;
};

struct EngineeredFeatures {
  FeatureMatrix matrix;
  /// Cancelled and diverted flights are left out of every model input.
  std::size_t excluded_cancelled_or_diverted = 0;
};

/// Numeric encoding of every non-cancelled, non-diverted flight: periodic
/// date and time-of-day features, station direction vectors, route distance,
/// seat-count aircraft types, one-hot delay codes, and the raw continuous
/// columns. Row ids are the records' source rows; labels are delay codes.
/// Throws EmptyInputError when no flight remains.
EngineeredFeatures engineer_features(const FlightDataset& dataset, const EngineerOptions& options);

}  // namespace irops::features
