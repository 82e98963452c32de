#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "irops/flight_data/flight_record.hpp"

namespace irops {

/// Cross-tabulation of disrupted flights by functional domain and effect.
class DisruptionReport {
 public:
  [[nodiscard]] std::uint64_t count(FunctionalDomain d, DisruptionEffect e) const;
  [[nodiscard]] std::uint64_t effect_total(DisruptionEffect e) const;
  [[nodiscard]] std::uint64_t non_disrupted() const noexcept { return non_disrupted_; }
  [[nodiscard]] std::uint64_t disrupted_total() const noexcept;
  [[nodiscard]] std::uint64_t total() const noexcept { return non_disrupted_ + disrupted_total(); }

  /// Percentage of effect-e flights owned by domain d; 0 when the effect has no flights.
  [[nodiscard]] double domain_share_pct(FunctionalDomain d, DisruptionEffect e) const;
  [[nodiscard]] double delayed_share_of_disrupted_pct() const;
  [[nodiscard]] double disrupted_share_of_total_pct() const;

  /// Long-format CSV: one row per (domain, effect) cell plus summary rows.
  [[nodiscard]] std::string to_csv() const;
  /// Aligned table in the layout of an operations disruption outlook.
  [[nodiscard]] std::string to_text() const;

 private:
  friend DisruptionReport macroscopic_report(const FlightDataset& dataset);

  std::array<std::array<std::uint64_t, 3>, kDomainCount> counts_{};
  std::uint64_t non_disrupted_ = 0;
};

/// Throws EmptyInputError on an empty dataset.
DisruptionReport macroscopic_report(const FlightDataset& dataset);

/// Records matching both predicates, in input order.
FlightDataset filter_subset(const FlightDataset& dataset, FunctionalDomain domain,
                            DisruptionEffect effect);

}  // namespace irops
