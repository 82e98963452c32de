#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "irops/flight_data/flight_record.hpp"

namespace irops {

/// Column names of the flight CSV, in the order they are written.
inline constexpr std::array<std::string_view, 21> kFlightColumns{
    "flight_date",     "orig_iata",       "dest_iata",       "orig_lat",        "orig_lon",
    "dest_lat",        "dest_lon",        "sched_dep_min",   "sched_arr_min",   "route_originator",
    "onboard_count",   "sched_turn_mins", "adjst_turn_mins", "actl_turn_mins",  "sched_acft_code",
    "actl_acft_code",  "swap_flag",       "functional_domain", "disruption_effect", "delay_code",
    "delay_mins"};

struct SchemaOptions {
  /// Columns outside kFlightColumns are ignored when true, a SchemaError otherwise.
  bool allow_extra_columns = true;
};

struct RowError {
  std::size_t line = 0;  ///< 1-based physical line in the file (header is line 1)
  std::string message;
};

struct FlightParseResult {
  FlightDataset records;
  std::vector<RowError> errors;
};

/// Reads a flight CSV. Every data row yields either a validated record or a
/// RowError; nothing is dropped silently. Missing columns throw SchemaError.
FlightParseResult parse_flight_csv(std::istream& in, const SchemaOptions& options = {});
FlightParseResult parse_flight_csv(const std::filesystem::path& path,
                                   const SchemaOptions& options = {});

void write_flight_csv(std::ostream& out, const FlightDataset& dataset);
std::string flight_csv_string(const FlightDataset& dataset);

}  // namespace irops
