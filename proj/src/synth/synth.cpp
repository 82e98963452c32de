#include "irops/synth/synth.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "irops/core/error.hpp"
#include "irops/core/rng.hpp"
#include "irops/core/text.hpp"
#include "irops/features/geodesy.hpp"

namespace irops::synth {

namespace {

using FD = FunctionalDomain;
using DE = DisruptionEffect;

// Delayed, Cancelled, Diverted per domain, in kAllDomains order.
constexpr std::array<std::array<std::uint64_t, 3>, kDomainCount> kReferenceCounts{{
    {46'870, 0, 0},          // Customer Hold
    {17'468, 0, 0},          // Dispatch CSC
    {36'370, 1'099, 909},    // Flight Operations
    {4'841, 0, 0},           // Fuel Management
    {168'375, 2'518, 460},   // Ground Operations
    {79'444, 984, 67},       // Inflight
    {33'518, 55, 0},         // Maintenance
    {22'644, 2'619, 433},    // NAS
    {2'955, 6, 11},          // Security
    {8'953, 0, 0},           // Technology
    {12'659, 12'156, 4'905}, // Weather
}};

std::size_t slot(DE e) {
  if (e == DE::None) {
    throw DomainError("non-disrupted flights have no domain weight");
  }
  return static_cast<std::size_t>(e) - 1;
}

std::vector<Airport> default_airports() {
  return {
      {"DAL", 32.8471, -96.8518},  {"HOU", 29.6454, -95.2789},  {"MDW", 41.7868, -87.7522},
      {"BWI", 39.1754, -76.6683},  {"LAS", 36.0840, -115.1537}, {"PHX", 33.4352, -112.0101},
      {"DEN", 39.8561, -104.6737}, {"ATL", 33.6407, -84.4277},  {"OAK", 37.7126, -122.2197},
      {"LAX", 33.9416, -118.4085}, {"MCO", 28.4312, -81.3081},  {"BNA", 36.1263, -86.6774},
      {"STL", 38.7487, -90.3700},  {"AUS", 30.1975, -97.6664},  {"SAN", 32.7338, -117.1933},
      {"SJC", 37.3639, -121.9289}, {"TPA", 27.9755, -82.5332},  {"MCI", 39.2976, -94.7139},
      {"SMF", 38.6951, -121.5908}, {"SAT", 29.5312, -98.4683},
  };
}

std::string domain_key(FD d) { return std::string(to_string(d)); }

}  // namespace

double SynthConfig::weight(FunctionalDomain d, DisruptionEffect e) const {
  return domain_effect_weights[static_cast<std::size_t>(d)][slot(e)];
}

void SynthConfig::set_weight(FunctionalDomain d, DisruptionEffect e, double w) {
  domain_effect_weights[static_cast<std::size_t>(d)][slot(e)] = w;
}

std::uint64_t table1_count(FunctionalDomain d, DisruptionEffect e) {
  return kReferenceCounts[static_cast<std::size_t>(d)][slot(e)];
}

SynthConfig default_table1_config(std::uint64_t n_total, std::uint64_t seed) {
  if (n_total == 0) {
    throw ConfigError("n_total must be at least 1");
  }
  SynthConfig c;
  c.n_total = n_total;
  c.seed = seed;

  double total = static_cast<double>(kNonDisruptedCount);
  for (const auto& row : kReferenceCounts) {
    for (const auto v : row) {
      total += static_cast<double>(v);
    }
  }
  c.non_disrupted_weight = static_cast<double>(kNonDisruptedCount) / total;
  for (std::size_t d = 0; d < kDomainCount; ++d) {
    for (std::size_t e = 0; e < 3; ++e) {
      c.domain_effect_weights[d][e] = static_cast<double>(kReferenceCounts[d][e]) / total;
    }
  }

  c.airport_pool = default_airports();
  // 737-300/-500/-700/-800/MAX 8; the -800 and MAX 8 share a seat count.
  c.seat_map = {{"733", 143}, {"735", 122}, {"73G", 143}, {"73H", 175}, {"7M8", 175}};

  for (const auto d : kAllDomains) {
    if (d == FD::Weather) {
      // Per-code frequencies within the weather domain are not published;
      // mass is spread evenly over the four dominant codes.
      c.delay_codes[d] = {"ATC Hold at Origin", "ATC Hold at Destination", "Deicing at Gate",
                          "Hail or Snow Damage"};
    } else {
      c.delay_codes[d] = {domain_key(d) + " Delay"};
    }
  }
  c.turnaround_model.coef_delaycode = {{"ATC Hold at Origin", 0.08},
                                       {"ATC Hold at Destination", -0.06},
                                       {"Deicing at Gate", 0.15},
                                       {"Hail or Snow Damage", 0.10}};
  return c;
}

void validate(const SynthConfig& c) {
  if (c.n_total < 1) {
    throw ConfigError("n_total must be at least 1");
  }
  double sum = c.non_disrupted_weight;
  if (!(c.non_disrupted_weight >= 0.0)) {
    throw ConfigError("non_disrupted_weight must be non-negative");
  }
  for (std::size_t d = 0; d < kDomainCount; ++d) {
    for (std::size_t e = 0; e < 3; ++e) {
      const double w = c.domain_effect_weights[d][e];
      if (!(w >= 0.0) || !std::isfinite(w)) {
        throw ConfigError("weight for " + domain_key(kAllDomains[d]) + " must be non-negative");
      }
      sum += w;
      if (w > 0.0) {
        const auto it = c.delay_codes.find(kAllDomains[d]);
        if (it == c.delay_codes.end() || it->second.empty()) {
          throw ConfigError("domain " + domain_key(kAllDomains[d]) +
                            " has positive weight but no delay codes");
        }
        for (const auto& code : it->second) {
          if (code.empty()) {
            throw ConfigError("empty delay code for domain " + domain_key(kAllDomains[d]));
          }
        }
      }
    }
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw ConfigError("weights must sum to 1 (got " + text::format_double(sum) + ")");
  }
  if (c.airport_pool.size() < 2) {
    throw ConfigError("airport pool needs at least two stations");
  }
  std::set<std::string> seen;
  for (const auto& a : c.airport_pool) {
    if (a.iata.size() != 3) {
      throw ConfigError("airport code '" + a.iata + "' is not a 3-letter IATA code");
    }
    if (!seen.insert(a.iata).second) {
      throw ConfigError("duplicate airport " + a.iata);
    }
    if (!(a.lat >= -90.0 && a.lat <= 90.0) || !(a.lon >= -180.0 && a.lon <= 180.0)) {
      throw ConfigError("airport " + a.iata + " coordinates out of range");
    }
  }
  if (c.seat_map.empty()) {
    throw ConfigError("seat map is empty");
  }
  for (const auto& [code, seats] : c.seat_map) {
    if (seats <= 0) {
      throw ConfigError("seat count for " + code + " must be positive");
    }
  }
  const auto& m = c.turnaround_model;
  if (!(c.delay_median_mins > 0.0) || !(c.delay_log_sd > 0.0) ||
      !std::isfinite(c.delay_median_mins) || !std::isfinite(c.delay_log_sd)) {
    throw ConfigError("delay distribution needs positive median and log sd");
  }
  if (!(m.log_sigma > 0.0) || !std::isfinite(m.log_sigma)) {
    throw ConfigError("turnaround log_sigma must be positive");
  }
  for (const double v : {m.base_log_mean, m.coef_adjst, m.coef_onboard}) {
    if (!std::isfinite(v)) {
      throw ConfigError("turnaround coefficients must be finite");
    }
  }
  if (!c.first_date.ok() || !c.last_date.ok() ||
      std::chrono::sys_days(c.last_date) < std::chrono::sys_days(c.first_date)) {
    throw ConfigError("invalid date range");
  }
}

FlightDataset generate(const SynthConfig& c) {
  validate(c);
  Rng rng(c.seed);

  // Cumulative distribution over [none, (domain, effect)...].
  std::vector<double> cdf;
  std::vector<std::pair<FD, DE>> cells;
  double acc = c.non_disrupted_weight;
  cdf.push_back(acc);
  cells.emplace_back(FD::CustomerHold, DE::None);
  for (std::size_t d = 0; d < kDomainCount; ++d) {
    for (std::size_t e = 0; e < 3; ++e) {
      acc += c.domain_effect_weights[d][e];
      cdf.push_back(acc);
      cells.emplace_back(kAllDomains[d], kDisruptedEffects[e]);
    }
  }

  std::vector<std::string> acft_codes;
  for (const auto& [code, seats] : c.seat_map) {
    acft_codes.push_back(code);
  }
  const auto first_day = std::chrono::sys_days(c.first_date);
  const auto n_days =
      static_cast<std::uint64_t>((std::chrono::sys_days(c.last_date) - first_day).count()) + 1;
  const auto& model = c.turnaround_model;

  const auto draw_cell = [&] {
    const double u = rng.uniform() * acc;
    std::size_t cell = 0;
    while (cell + 1 < cdf.size() && u >= cdf[cell]) {
      ++cell;
    }
    // Skip zero-weight cells that a boundary draw could land on.
    while (cell + 1 < cdf.size() && (cell == 0 ? cdf[0] : cdf[cell] - cdf[cell - 1]) <= 0.0) {
      ++cell;
    }
    return cell;
  };
  std::vector<std::size_t> assigned;
  if (c.exact_counts) {
    // Largest-remainder apportionment, ties to the earlier cell.
    const auto n = static_cast<double>(c.n_total);
    std::vector<std::uint64_t> count(cdf.size());
    std::vector<std::pair<double, std::size_t>> rem;
    std::uint64_t used = 0;
    for (std::size_t k = 0; k < cdf.size(); ++k) {
      const double share = n * (k == 0 ? cdf[0] : cdf[k] - cdf[k - 1]) / acc;
      count[k] = static_cast<std::uint64_t>(std::floor(share));
      used += count[k];
      if (share > 0.0) {
        rem.emplace_back(share - std::floor(share), k);
      }
    }
    std::stable_sort(rem.begin(), rem.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    for (std::size_t t = 0; used < c.n_total; ++t, ++used) {
      ++count[rem[t % rem.size()].second];
    }
    assigned.reserve(c.n_total);
    for (std::size_t k = 0; k < count.size(); ++k) {
      assigned.insert(assigned.end(), count[k], k);
    }
    for (std::size_t k = assigned.size(); k > 1; --k) {
      std::swap(assigned[k - 1], assigned[rng.index(k)]);
    }
  }

  FlightDataset out;
  out.reserve(c.n_total);
  for (std::uint64_t i = 0; i < c.n_total; ++i) {
    FlightRecord r;
    r.source_row = i + 1;

    const std::size_t cell = assigned.empty() ? draw_cell() : assigned[i];
    const auto [domain, effect] = cells[cell];
    r.disruption_effect = effect;

    r.flight_date = Date(first_day + std::chrono::days(static_cast<int>(rng.index(n_days))));

    const auto oi = rng.index(c.airport_pool.size());
    auto di = rng.index(c.airport_pool.size() - 1);
    if (di >= oi) {
      ++di;
    }
    const auto& orig = c.airport_pool[oi];
    const auto& dest = c.airport_pool[di];
    r.orig_iata = orig.iata;
    r.dest_iata = dest.iata;
    r.orig_lat = orig.lat;
    r.orig_lon = orig.lon;
    r.dest_lat = dest.lat;
    r.dest_lon = dest.lon;

    r.sched_dep_min = 300 + static_cast<int>(rng.index(1080));
    const double dist_km =
        features::vincenty_distance({orig.lat, orig.lon}, {dest.lat, dest.lon},
                                    {.haversine_fallback = true}) / 1000.0;
    const int block_min = 25 + static_cast<int>(std::lround(dist_km / 8.0));
    r.sched_arr_min = (r.sched_dep_min + block_min) % 1440;
    r.route_originator = rng.bernoulli(r.sched_dep_min < 420 ? 0.7 : 0.05);

    if (effect != DE::None) {
      r.functional_domain = domain;
      const auto& codes = c.delay_codes.at(domain);
      r.delay_code = codes[rng.index(codes.size())];
      r.delay_mins = 1.0 + std::floor(std::exp(
          rng.normal(std::log(c.delay_median_mins), c.delay_log_sd)));
    }

    r.sched_acft_code = acft_codes[rng.index(acft_codes.size())];
    const double p_swap = r.delay_code == "Hail or Snow Damage" ? 0.5 : 0.04;
    r.swap_flag = acft_codes.size() > 1 && rng.bernoulli(p_swap);
    r.actl_acft_code = r.sched_acft_code;
    if (r.swap_flag) {
      std::size_t k = rng.index(acft_codes.size() - 1);
      const auto sched_pos = static_cast<std::size_t>(
          std::find(acft_codes.begin(), acft_codes.end(), r.sched_acft_code) - acft_codes.begin());
      if (k >= sched_pos) {
        ++k;
      }
      r.actl_acft_code = acft_codes[k];
    }
    const int seats = c.seat_map.at(r.actl_acft_code);
    r.onboard_count = static_cast<int>(std::floor(seats * rng.uniform(0.55, 1.0)));

    r.sched_turn_mins = 30.0 + 5.0 * static_cast<double>(rng.index(9));
    r.adjst_turn_mins = r.sched_turn_mins;
    if (effect == DE::Delayed) {
      r.adjst_turn_mins += std::round(rng.uniform() * r.delay_mins);
    }

    double log_turn = model.base_log_mean + model.coef_adjst * r.adjst_turn_mins +
                      model.coef_onboard * r.onboard_count;
    if (r.delay_code) {
      if (const auto it = model.coef_delaycode.find(*r.delay_code);
          it != model.coef_delaycode.end()) {
        log_turn += it->second;
      }
    }
    log_turn += model.log_sigma * rng.normal();
    r.actl_turn_mins = std::exp(log_turn);

    out.push_back(std::move(r));
  }
  return out;
}

SynthConfig config_from_keyed(const KeyedText& doc, SynthConfig c) {
  c.n_total = doc.get_uint("n_total", c.n_total);
  c.seed = doc.get_uint("seed", c.seed);
  c.exact_counts = doc.get_bool("exact_counts", c.exact_counts);
  c.delay_median_mins = doc.get_double("delay.median_mins", c.delay_median_mins);
  c.delay_log_sd = doc.get_double("delay.log_sd", c.delay_log_sd);
  if (doc.contains("first_date")) {
    c.first_date = parse_iso_date(doc.get_string("first_date"));
  }
  if (doc.contains("last_date")) {
    c.last_date = parse_iso_date(doc.get_string("last_date"));
  }
  c.non_disrupted_weight = doc.get_double("non_disrupted_weight", c.non_disrupted_weight);

  for (const auto& [rest, value] : doc.with_prefix("weight.")) {
    const auto dot = rest.rfind('.');
    if (dot == std::string::npos) {
      throw ConfigError("weight key must be weight.<Domain>.<Effect>: " + rest);
    }
    double w = 0.0;
    if (!text::parse_double(value, w)) {
      throw ConfigError("bad weight value for " + rest);
    }
    try {
      c.set_weight(parse_domain(rest.substr(0, dot)), parse_effect(rest.substr(dot + 1)), w);
    } catch (const DomainError& e) {
      throw ConfigError(std::string("weight key: ") + e.what());
    }
  }

  if (const auto airports = doc.with_prefix("airport."); !airports.empty()) {
    c.airport_pool.clear();
    for (const auto& [iata, value] : airports) {
      const auto parts = text::split_csv_line(value);
      Airport a{iata, 0.0, 0.0};
      if (parts.size() != 2 || !text::parse_double(parts[0], a.lat) ||
          !text::parse_double(parts[1], a.lon)) {
        throw ConfigError("airport." + iata + " must be 'lat, lon'");
      }
      c.airport_pool.push_back(a);
    }
  }
  if (const auto seats = doc.with_prefix("seat."); !seats.empty()) {
    c.seat_map.clear();
    for (const auto& [code, value] : seats) {
      std::int64_t s = 0;
      if (!text::parse_int(value, s)) {
        throw ConfigError("seat." + code + " must be an integer");
      }
      c.seat_map[code] = static_cast<int>(s);
    }
  }
  for (const auto& [dname, value] : doc.with_prefix("delay_codes.")) {
    FD d{};
    try {
      d = parse_domain(dname);
    } catch (const DomainError& e) {
      throw ConfigError(std::string("delay_codes key: ") + e.what());
    }
    std::vector<std::string> codes;
    std::string_view rest = value;
    while (!rest.empty()) {
      const auto semi = rest.find(';');
      const auto part = text::trim(rest.substr(0, semi));
      if (!part.empty()) {
        codes.emplace_back(part);
      }
      rest = semi == std::string_view::npos ? std::string_view{} : rest.substr(semi + 1);
    }
    c.delay_codes[d] = std::move(codes);
  }

  auto& m = c.turnaround_model;
  m.base_log_mean = doc.get_double("turnaround.base_log_mean", m.base_log_mean);
  m.coef_adjst = doc.get_double("turnaround.coef_adjst", m.coef_adjst);
  m.coef_onboard = doc.get_double("turnaround.coef_onboard", m.coef_onboard);
  m.log_sigma = doc.get_double("turnaround.log_sigma", m.log_sigma);
  for (const auto& [code, value] : doc.with_prefix("turnaround.coef_delaycode.")) {
    double v = 0.0;
    if (!text::parse_double(value, v)) {
      throw ConfigError("bad coefficient for delay code " + code);
    }
    m.coef_delaycode[code] = v;
  }
  return c;
}

KeyedText config_to_keyed(const SynthConfig& c) {
  KeyedText doc;
  doc.set("n_total", c.n_total);
  doc.set("seed", c.seed);
  doc.set("exact_counts", c.exact_counts);
  doc.set("delay.median_mins", c.delay_median_mins);
  doc.set("delay.log_sd", c.delay_log_sd);
  doc.set("first_date", format_iso_date(c.first_date));
  doc.set("last_date", format_iso_date(c.last_date));
  doc.set("non_disrupted_weight", c.non_disrupted_weight);
  for (const auto d : kAllDomains) {
    for (const auto e : kDisruptedEffects) {
      doc.set("weight." + domain_key(d) + "." + std::string(to_string(e)), c.weight(d, e));
    }
  }
  for (const auto& a : c.airport_pool) {
    doc.set("airport." + a.iata, text::format_double(a.lat) + ", " + text::format_double(a.lon));
  }
  for (const auto& [code, seats] : c.seat_map) {
    doc.set("seat." + code, seats);
  }
  for (const auto& [d, codes] : c.delay_codes) {
    std::string joined;
    for (std::size_t i = 0; i < codes.size(); ++i) {
      joined += (i ? "; " : "") + codes[i];
    }
    doc.set("delay_codes." + domain_key(d), joined);
  }
  const auto& m = c.turnaround_model;
  doc.set("turnaround.base_log_mean", m.base_log_mean);
  doc.set("turnaround.coef_adjst", m.coef_adjst);
  doc.set("turnaround.coef_onboard", m.coef_onboard);
  doc.set("turnaround.log_sigma", m.log_sigma);
  for (const auto& [code, v] : m.coef_delaycode) {
    doc.set("turnaround.coef_delaycode." + code, v);
  }
  return doc;
}

}  // namespace irops::synth
