#include "irops/flight_data/flight_record.hpp"

#include <cstdio>

#include "irops/core/error.hpp"
#include "irops/core/text.hpp"

namespace irops {

namespace {

constexpr std::array<std::string_view, kDomainCount> kDomainNames{
    "Customer Hold", "Dispatch CSC", "Flight Operations", "Fuel Management",
    "Ground Operations", "Inflight", "Maintenance", "NAS", "Security", "Technology", "Weather"};

constexpr std::array<std::string_view, kEffectCount> kEffectNames{"None", "Delayed", "Cancelled",
                                                                  "Diverted"};

}  // namespace

std::string_view to_string(FunctionalDomain d) noexcept {
  return kDomainNames[static_cast<std::size_t>(d)];
}

std::string_view to_string(DisruptionEffect e) noexcept {
  return kEffectNames[static_cast<std::size_t>(e)];
}

FunctionalDomain parse_domain(std::string_view name) {
  name = text::trim(name);
  for (std::size_t i = 0; i < kDomainNames.size(); ++i) {
    if (kDomainNames[i] == name) {
      return static_cast<FunctionalDomain>(i);
    }
  }
  throw DomainError("unknown functional domain '" + std::string(name) + "'");
}

DisruptionEffect parse_effect(std::string_view name) {
  name = text::trim(name);
  for (std::size_t i = 0; i < kEffectNames.size(); ++i) {
    if (kEffectNames[i] == name) {
      return static_cast<DisruptionEffect>(i);
    }
  }
  throw DomainError("unknown disruption effect '" + std::string(name) + "'");
}

Date parse_iso_date(std::string_view s) {
  s = text::trim(s);
  std::int64_t y = 0;
  std::int64_t m = 0;
  std::int64_t d = 0;
  if (s.size() != 10 || s[4] != '-' || s[7] != '-' || !text::parse_int(s.substr(0, 4), y) ||
      !text::parse_int(s.substr(5, 2), m) || !text::parse_int(s.substr(8, 2), d)) {
    throw DomainError("malformed date '" + std::string(s) + "' (expected YYYY-MM-DD)");
  }
  const Date date{std::chrono::year(static_cast<int>(y)), std::chrono::month(static_cast<unsigned>(m)),
                  std::chrono::day(static_cast<unsigned>(d))};
  if (!date.ok()) {
    throw DomainError("invalid calendar date '" + std::string(s) + "'");
  }
  return date;
}

std::string format_iso_date(const Date& d) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(d.year()),
                static_cast<unsigned>(d.month()), static_cast<unsigned>(d.day()));
  return buf;
}

std::optional<std::string> validate(const FlightRecord& r) {
  if (!r.flight_date.ok()) {
    return "invalid flight date";
  }
  for (const double lat : {r.orig_lat, r.dest_lat}) {
    if (!(lat >= -90.0 && lat <= 90.0)) {
      return "latitude out of range";
    }
  }
  for (const double lon : {r.orig_lon, r.dest_lon}) {
    if (!(lon >= -180.0 && lon <= 180.0)) {
      return "longitude out of range";
    }
  }
  for (const int t : {r.sched_dep_min, r.sched_arr_min}) {
    if (t < 0 || t >= 1440) {
      return "scheduled time outside [0, 1440)";
    }
  }
  if (r.onboard_count < 0) {
    return "negative onboard count";
  }
  for (const double v : {r.sched_turn_mins, r.adjst_turn_mins, r.actl_turn_mins, r.delay_mins}) {
    if (!(v >= 0.0)) {
      return "negative minute field";
    }
  }
  const bool none = r.disruption_effect == DisruptionEffect::None;
  if (none != !r.functional_domain.has_value()) {
    return "functional domain must be present exactly when the flight is disrupted";
  }
  if (none != !r.delay_code.has_value()) {
    return "delay code must be present exactly when the flight is disrupted";
  }
  if (none != (r.delay_mins == 0.0)) {
    return "delay minutes must be zero exactly when the flight is not disrupted";
  }
  if (r.delay_code && r.delay_code->empty()) {
    return "empty delay code";
  }
  return std::nullopt;
}

}  // namespace irops
