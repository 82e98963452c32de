#include "irops/flight_data/disruption_report.hpp"

#include <cstdio>
#include <sstream>

#include "irops/core/error.hpp"

namespace irops {

namespace {

std::size_t effect_slot(DisruptionEffect e) {
  if (e == DisruptionEffect::None) {
    throw DomainError("no report cell for non-disrupted flights");
  }
  return static_cast<std::size_t>(e) - 1;
}

double pct(std::uint64_t num, std::uint64_t den) {
  return den == 0 ? 0.0 : 100.0 * static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

std::uint64_t DisruptionReport::count(FunctionalDomain d, DisruptionEffect e) const {
  return counts_[static_cast<std::size_t>(d)][effect_slot(e)];
}

std::uint64_t DisruptionReport::effect_total(DisruptionEffect e) const {
  if (e == DisruptionEffect::None) {
    return non_disrupted_;
  }
  std::uint64_t sum = 0;
  for (const auto& row : counts_) {
    sum += row[effect_slot(e)];
  }
  return sum;
}

std::uint64_t DisruptionReport::disrupted_total() const noexcept {
  std::uint64_t sum = 0;
  for (const auto& row : counts_) {
    for (const auto c : row) {
      sum += c;
    }
  }
  return sum;
}

double DisruptionReport::domain_share_pct(FunctionalDomain d, DisruptionEffect e) const {
  return pct(count(d, e), effect_total(e));
}

double DisruptionReport::delayed_share_of_disrupted_pct() const {
  return pct(effect_total(DisruptionEffect::Delayed), disrupted_total());
}

double DisruptionReport::disrupted_share_of_total_pct() const {
  return pct(disrupted_total(), total());
}

std::string DisruptionReport::to_csv() const {
  std::ostringstream out;
  out << "functional_domain,disruption_effect,count,share_of_effect_pct\n";
  char buf[32];
  for (const auto d : kAllDomains) {
    for (const auto e : kDisruptedEffects) {
      std::snprintf(buf, sizeof buf, "%.4f", domain_share_pct(d, e));
      out << to_string(d) << ',' << to_string(e) << ',' << count(d, e) << ',' << buf << '\n';
    }
  }
  for (const auto e : kDisruptedEffects) {
    out << "ALL," << to_string(e) << ',' << effect_total(e) << ",100.0000\n";
  }
  std::snprintf(buf, sizeof buf, "%.4f", 100.0 - disrupted_share_of_total_pct());
  out << "ALL,None," << non_disrupted_ << ',' << buf << '\n';
  std::snprintf(buf, sizeof buf, "%.4f", delayed_share_of_disrupted_pct());
  out << "SUMMARY,delayed_share_of_disrupted," << effect_total(DisruptionEffect::Delayed) << ','
      << buf << '\n';
  std::snprintf(buf, sizeof buf, "%.4f", disrupted_share_of_total_pct());
  out << "SUMMARY,disrupted_share_of_total," << disrupted_total() << ',' << buf << '\n';
  return out.str();
}

std::string DisruptionReport::to_text() const {
  std::ostringstream out;
  char line[160];
  std::snprintf(line, sizeof line, "%-20s %12s %8s %12s %8s %12s %8s\n", "Functional Domain",
                "Delayed", "%", "Cancelled", "%", "Diverted", "%");
  out << line;
  out << std::string(86, '-') << '\n';
  for (const auto d : kAllDomains) {
    std::snprintf(line, sizeof line, "%-20s %12llu %7.2f%% %12llu %7.2f%% %12llu %7.2f%%\n",
                  std::string(to_string(d)).c_str(),
                  static_cast<unsigned long long>(count(d, DisruptionEffect::Delayed)),
                  domain_share_pct(d, DisruptionEffect::Delayed),
                  static_cast<unsigned long long>(count(d, DisruptionEffect::Cancelled)),
                  domain_share_pct(d, DisruptionEffect::Cancelled),
                  static_cast<unsigned long long>(count(d, DisruptionEffect::Diverted)),
                  domain_share_pct(d, DisruptionEffect::Diverted));
    out << line;
  }
  out << std::string(86, '-') << '\n';
  std::snprintf(line, sizeof line, "%-20s %12llu %8s %12llu %8s %12llu %8s\n", "Total",
                static_cast<unsigned long long>(effect_total(DisruptionEffect::Delayed)), "",
                static_cast<unsigned long long>(effect_total(DisruptionEffect::Cancelled)), "",
                static_cast<unsigned long long>(effect_total(DisruptionEffect::Diverted)), "");
  out << line << '\n';
  std::snprintf(line, sizeof line, "flights: %llu  non-disrupted: %llu  disrupted: %llu (%.2f%%)\n",
                static_cast<unsigned long long>(total()),
                static_cast<unsigned long long>(non_disrupted_),
                static_cast<unsigned long long>(disrupted_total()), disrupted_share_of_total_pct());
  out << line;
  std::snprintf(line, sizeof line, "delayed share of disrupted: %.2f%%\n",
                delayed_share_of_disrupted_pct());
  out << line;
  return out.str();
}

DisruptionReport macroscopic_report(const FlightDataset& dataset) {
  if (dataset.empty()) {
    throw EmptyInputError("macroscopic report needs at least one flight record");
  }
  DisruptionReport report;
  for (const auto& r : dataset) {
    if (r.disruption_effect == DisruptionEffect::None) {
      ++report.non_disrupted_;
      continue;
    }
    if (!r.functional_domain) {
      throw DomainError("disrupted record without functional domain (row " +
                        std::to_string(r.source_row) + ")");
    }
    ++report.counts_[static_cast<std::size_t>(*r.functional_domain)]
                    [effect_slot(r.disruption_effect)];
  }
  return report;
}

FlightDataset filter_subset(const FlightDataset& dataset, FunctionalDomain domain,
                            DisruptionEffect effect) {
  FlightDataset out;
  for (const auto& r : dataset) {
    if (r.disruption_effect == effect && r.functional_domain == domain) {
      out.push_back(r);
    }
  }
  return out;
}

}  // namespace irops
