#pragma once

#include <array>
#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace irops {

/// The eleven AOCC functional roles that own a disruption class. Closed set.
enum class FunctionalDomain : std::uint8_t {
  CustomerHold,
  DispatchCsc,
  FlightOperations,
  FuelManagement,
  GroundOperations,
  Inflight,
  Maintenance,
  Nas,
  Security,
  Technology,
  Weather,
};

inline constexpr std::size_t kDomainCount = 11;

inline constexpr std::array<FunctionalDomain, kDomainCount> kAllDomains{
    FunctionalDomain::CustomerHold,     FunctionalDomain::DispatchCsc,
    FunctionalDomain::FlightOperations, FunctionalDomain::FuelManagement,
    FunctionalDomain::GroundOperations, FunctionalDomain::Inflight,
    FunctionalDomain::Maintenance,      FunctionalDomain::Nas,
    FunctionalDomain::Security,         FunctionalDomain::Technology,
    FunctionalDomain::Weather,
};

enum class DisruptionEffect : std::uint8_t { None, Delayed, Cancelled, Diverted };

inline constexpr std::size_t kEffectCount = 4;

inline constexpr std::array<DisruptionEffect, 3> kDisruptedEffects{
    DisruptionEffect::Delayed, DisruptionEffect::Cancelled, DisruptionEffect::Diverted};

/// Display names as used in operations-control reporting ("Ground Operations", "NAS", ...).
std::string_view to_string(FunctionalDomain d) noexcept;
std::string_view to_string(DisruptionEffect e) noexcept;

/// Throws DomainError for an unknown name; the domain set is closed.
FunctionalDomain parse_domain(std::string_view name);
DisruptionEffect parse_effect(std::string_view name);

using Date = std::chrono::year_month_day;

/// Parses YYYY-MM-DD. Throws DomainError on malformed or invalid dates.
Date parse_iso_date(std::string_view s);
std::string format_iso_date(const Date& d);

/// One scheduled direct flight: planning, execution, and disruption fields.
/// Times are minutes since local midnight; durations are minutes.
struct FlightRecord {
  Date flight_date{};
  std::string orig_iata;
  std::string dest_iata;
  double orig_lat = 0.0;
  double orig_lon = 0.0;
  double dest_lat = 0.0;
  double dest_lon = 0.0;
  int sched_dep_min = 0;
  int sched_arr_min = 0;
  bool route_originator = false;
  int onboard_count = 0;
  double sched_turn_mins = 0.0;
  double adjst_turn_mins = 0.0;
  double actl_turn_mins = 0.0;
  std::string sched_acft_code;
  std::string actl_acft_code;
  bool swap_flag = false;
  std::optional<FunctionalDomain> functional_domain;
  DisruptionEffect disruption_effect = DisruptionEffect::None;
  std::optional<std::string> delay_code;
  double delay_mins = 0.0;

  /// 1-based position of the record in its source file (or generation order).
  /// Not a CSV column; used as the stable row identifier downstream.
  std::uint64_t source_row = 0;

  bool operator==(const FlightRecord&) const = default;
};

using FlightDataset = std::vector<FlightRecord>;

/// First violated record invariant, or nullopt when the record is valid.
std::optional<std::string> validate(const FlightRecord& r);

}  // namespace irops
