#include <doctest.h>

#include <cmath>
#include <map>

#include "irops/core/error.hpp"
#include "irops/flight_data/disruption_report.hpp"
#include "irops/flight_data/flight_csv.hpp"
#include "irops/synth/synth.hpp"

using namespace irops;
using FD = FunctionalDomain;
using DE = DisruptionEffect;

TEST_CASE("default weights follow the published counts") {
  const auto c = synth::default_table1_config(1000);
  CHECK(c.weight(FD::Weather, DE::Delayed) / c.weight(FD::GroundOperations, DE::Delayed) ==
        doctest::Approx(12659.0 / 168375.0).epsilon(1e-12));
  double sum = c.non_disrupted_weight;
  double delayed = 0.0;
  double disrupted = 0.0;
  for (const auto d : kAllDomains) {
    for (const auto e : kDisruptedEffects) {
      sum += c.weight(d, e);
      disrupted += c.weight(d, e);
      if (e == DE::Delayed) {
        delayed += c.weight(d, e);
      }
    }
  }
  CHECK(std::abs(sum - 1.0) <= 1e-9);
  CHECK(std::abs(100.0 * delayed / disrupted - 94.0) <= 1.0);
  CHECK_NOTHROW(synth::validate(c));
}

TEST_CASE("invalid configs are rejected before sampling") {
  CHECK_THROWS_AS(synth::default_table1_config(0), ConfigError);
  auto c = synth::default_table1_config(10);
  c.n_total = 0;
  CHECK_THROWS_AS(synth::generate(c), ConfigError);
  c = synth::default_table1_config(10);
  c.turnaround_model.log_sigma = 0.0;
  CHECK_THROWS_AS(synth::validate(c), ConfigError);
  c = synth::default_table1_config(10);
  c.non_disrupted_weight += 0.01;
  CHECK_THROWS_AS(synth::validate(c), ConfigError);
  c = synth::default_table1_config(10);
  c.delay_codes.erase(FD::Weather);
  CHECK_THROWS_AS(synth::validate(c), ConfigError);
}

TEST_CASE("same seed gives identical bytes") {
  const auto c = synth::default_table1_config(2000, 42);
  const auto a = flight_csv_string(synth::generate(c));
  const auto b = flight_csv_string(synth::generate(c));
  CHECK(a == b);
  const auto other = flight_csv_string(synth::generate(synth::default_table1_config(2000, 43)));
  CHECK(a != other);
}

TEST_CASE("records satisfy invariants and cell frequencies match weights") {
  for (const bool exact : {true, false}) {
    auto c = synth::default_table1_config(20000, 42);
    c.exact_counts = exact;
    const auto ds = synth::generate(c);
    REQUIRE(ds.size() == 20000);
    for (const auto& r : ds) {
      REQUIRE_FALSE(validate(r).has_value());
      if (r.disruption_effect == DE::Delayed) {
        CHECK(r.delay_mins > 0.0);
      }
    }
    const auto rep = macroscopic_report(ds);
    double worst = 0.0;
    for (const auto d : kAllDomains) {
      for (const auto e : kDisruptedEffects) {
        worst = std::max(worst, std::abs(static_cast<double>(rep.count(d, e)) / 20000.0 -
                                         c.weight(d, e)));
      }
    }
    worst = std::max(worst, std::abs(static_cast<double>(rep.non_disrupted()) / 20000.0 -
                                     c.non_disrupted_weight));
    CHECK(worst <= 0.01);
    if (exact) {
      // largest remainder: every cell is within one record of its quota
      CHECK(worst * 20000.0 <= 1.0 + 1e-9);
    }
  }
}

TEST_CASE("log turnaround residual is symmetric") {
  const auto c = synth::default_table1_config(20000, 5);
  const auto& m = c.turnaround_model;
  const auto ds = synth::generate(c);
  std::vector<double> res;
  for (const auto& r : ds) {
    double pred = m.base_log_mean + m.coef_adjst * r.adjst_turn_mins + m.coef_onboard * r.onboard_count;
    if (r.delay_code) {
      if (const auto it = m.coef_delaycode.find(*r.delay_code); it != m.coef_delaycode.end()) {
        pred += it->second;
      }
    }
    res.push_back(std::log(r.actl_turn_mins) - pred);
  }
  double mean = 0.0;
  for (double v : res) mean += v;
  mean /= static_cast<double>(res.size());
  double m2 = 0.0;
  double m3 = 0.0;
  for (double v : res) {
    m2 += (v - mean) * (v - mean);
    m3 += std::pow(v - mean, 3);
  }
  m2 /= static_cast<double>(res.size());
  m3 /= static_cast<double>(res.size());
  const double skew = m3 / std::pow(m2, 1.5);
  CHECK(std::abs(skew) <= 0.1);
  CHECK(std::sqrt(m2) == doctest::Approx(m.log_sigma).epsilon(0.03));
  CHECK(std::abs(mean) < 1e-3);
}

TEST_CASE("weather codes are spread evenly") {
  const auto ds = synth::generate(synth::default_table1_config(80000, 9));
  const auto sub = filter_subset(ds, FD::Weather, DE::Delayed);
  std::map<std::string, int> counts;
  for (const auto& r : sub) ++counts[*r.delay_code];
  CHECK(counts.size() == 4);
  const double expect = static_cast<double>(sub.size()) / 4.0;
  for (const auto& [code, n] : counts) {
    // 4 binomial sd
    CHECK(std::abs(n - expect) <= 4.0 * std::sqrt(expect * 0.75));
  }
}

TEST_CASE("keyed config round trip") {
  auto c = synth::default_table1_config(123, 77);
  c.delay_log_sd = 0.3;
  c.turnaround_model.coef_adjst = 0.02;
  const auto doc = synth::config_to_keyed(c);
  const auto back = synth::config_from_keyed(KeyedText::parse(doc.to_string()),
                                             synth::default_table1_config(1, 0));
  CHECK(back.n_total == 123);
  CHECK(back.seed == 77);
  CHECK(flight_csv_string(synth::generate(back)) == flight_csv_string(synth::generate(c)));
  CHECK_THROWS_AS(synth::config_from_keyed(KeyedText::parse("weight.Nowhere.Delayed = 0.1"), c),
                  ConfigError);
}
