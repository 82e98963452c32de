#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "irops/core/keyed_text.hpp"
#include "irops/flight_data/flight_record.hpp"

namespace irops::synth {

struct Airport {
  std::string iata;
  double lat = 0.0;
  double lon = 0.0;
};

/// Log-space linear-Gaussian model of the actual turnaround:
///   ln(actl) = base_log_mean + coef_adjst * adjst + coef_onboard * onboard
///              + coef_delaycode[code] + Normal(0, log_sigma)
struct TurnaroundModel {
  double base_log_mean = 3.0;
  double coef_adjst = 0.01;
  double coef_onboard = 0.001;
  std::map<std::string, double> coef_delaycode;
  double log_sigma = 0.02;
};

struct SynthConfig {
  std::uint64_t n_total = 1;
  /// Probability of each (domain, disrupted effect) cell; effect index 0..2 =
  /// Delayed, Cancelled, Diverted.
  std::array<std::array<double, 3>, kDomainCount> domain_effect_weights{};
  double non_disrupted_weight = 0.0;
  std::vector<Airport> airport_pool;
  std::map<std::string, int> seat_map;
  /// Delay codes drawn uniformly for each domain's disrupted flights.
  std::map<FunctionalDomain, std::vector<std::string>> delay_codes;
  TurnaroundModel turnaround_model;
  /// Disrupted flights carry delay 1 + floor(LogNormal(ln(delay_median_mins), delay_log_sd)).
  double delay_median_mins = 25.0;
  double delay_log_sd = 0.5;
  std::uint64_t seed = 0;
  /// Apportion n_total over the cells by largest remainder and shuffle the
  /// assignment, instead of drawing each record's cell independently.
  bool exact_counts = true;
  Date first_date{std::chrono::year(2016), std::chrono::September, std::chrono::day(1)};
  Date last_date{std::chrono::year(2017), std::chrono::September, std::chrono::day(30)};

  [[nodiscard]] double weight(FunctionalDomain d, DisruptionEffect e) const;
  void set_weight(FunctionalDomain d, DisruptionEffect e, double w);
};

/// Published per-domain flight counts of the reference year.
std::uint64_t table1_count(FunctionalDomain d, DisruptionEffect e);
/// Non-disrupted flights of the reference year.
inline constexpr std::uint64_t kNonDisruptedCount = 620'000;

/// Weights proportional to the published cell counts plus the non-disrupted
/// count, a 20-station airport pool, a five-type seat map, and the default
/// turnaround model. Throws ConfigError when n_total is 0.
SynthConfig default_table1_config(std::uint64_t n_total, std::uint64_t seed = 42);

/// Throws ConfigError describing the first violated invariant.
void validate(const SynthConfig& config);

/// Draws exactly n_total records from one stream seeded by config.seed. With
/// exact_counts the cell totals match the weights up to rounding; otherwise
/// every record's cell is an independent draw.
FlightDataset generate(const SynthConfig& config);

/// Reads overrides from a keyed text document on top of `base`.
///
/// Recognised keys: n_total, seed, exact_counts, delay.median_mins, delay.log_sd, first_date, last_date, non_disrupted_weight,
/// `weight.<Domain>.<Effect>`, `airport.<IATA> = lat, lon`, `seat.<code>`,
/// `delay_codes.<Domain> = code; code; ...`, `turnaround.base_log_mean`,
/// `turnaround.coef_adjst`, `turnaround.coef_onboard`, `turnaround.log_sigma`,
/// `turnaround.coef_delaycode.<code>`. Presence of any airport./seat. key
/// replaces the whole pool/map.
SynthConfig config_from_keyed(const KeyedText& doc, SynthConfig base);
KeyedText config_to_keyed(const SynthConfig& config);

}  // namespace irops::synth
