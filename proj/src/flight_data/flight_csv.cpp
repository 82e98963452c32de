#include "irops/flight_data/flight_csv.hpp"

#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>

#include "irops/core/error.hpp"
#include "irops/core/text.hpp"

namespace irops {

namespace {

enum Col : std::size_t {
  kDate,
  kOrigIata,
  kDestIata,
  kOrigLat,
  kOrigLon,
  kDestLat,
  kDestLon,
  kSchedDep,
  kSchedArr,
  kOriginator,
  kOnboard,
  kSchedTurn,
  kAdjstTurn,
  kActlTurn,
  kSchedAcft,
  kActlAcft,
  kSwap,
  kDomain,
  kEffect,
  kDelayCode,
  kDelayMins,
};

struct CellError {
  std::string message;
};

double cell_double(const std::string& s, std::string_view col) {
  double v = 0.0;
  if (!text::parse_double(s, v)) {
    throw CellError{"column " + std::string(col) + ": cannot parse '" + s + "' as number"};
  }
  return v;
}

int cell_int(const std::string& s, std::string_view col) {
  std::int64_t v = 0;
  if (!text::parse_int(s, v) || v < INT32_MIN || v > INT32_MAX) {
    throw CellError{"column " + std::string(col) + ": cannot parse '" + s + "' as integer"};
  }
  return static_cast<int>(v);
}

bool cell_bool(const std::string& s, std::string_view col) {
  bool v = false;
  if (!text::parse_bool(s, v)) {
    throw CellError{"column " + std::string(col) + ": cannot parse '" + s + "' as boolean"};
  }
  return v;
}

template <typename F>
auto cell(F&& f) {
  try {
    return f();
  } catch (const DomainError& e) {
    throw CellError{e.what()};
  }
}

FlightRecord parse_row(const std::vector<std::string>& f, const std::array<std::size_t, 21>& idx) {
  const auto at = [&](Col c) -> const std::string& { return f[idx[c]]; };
  const auto name = [](Col c) { return kFlightColumns[c]; };

  FlightRecord r;
  r.flight_date = cell([&] { return parse_iso_date(at(kDate)); });
  r.orig_iata = std::string(text::trim(at(kOrigIata)));
  r.dest_iata = std::string(text::trim(at(kDestIata)));
  r.orig_lat = cell_double(at(kOrigLat), name(kOrigLat));
  r.orig_lon = cell_double(at(kOrigLon), name(kOrigLon));
  r.dest_lat = cell_double(at(kDestLat), name(kDestLat));
  r.dest_lon = cell_double(at(kDestLon), name(kDestLon));
  r.sched_dep_min = cell_int(at(kSchedDep), name(kSchedDep));
  r.sched_arr_min = cell_int(at(kSchedArr), name(kSchedArr));
  r.route_originator = cell_bool(at(kOriginator), name(kOriginator));
  r.onboard_count = cell_int(at(kOnboard), name(kOnboard));
  r.sched_turn_mins = cell_double(at(kSchedTurn), name(kSchedTurn));
  r.adjst_turn_mins = cell_double(at(kAdjstTurn), name(kAdjstTurn));
  r.actl_turn_mins = cell_double(at(kActlTurn), name(kActlTurn));
  r.sched_acft_code = std::string(text::trim(at(kSchedAcft)));
  r.actl_acft_code = std::string(text::trim(at(kActlAcft)));
  r.swap_flag = cell_bool(at(kSwap), name(kSwap));

  const auto domain = text::trim(at(kDomain));
  if (!domain.empty() && domain != "None") {
    r.functional_domain = cell([&] { return parse_domain(domain); });
  }
  r.disruption_effect = cell([&] { return parse_effect(at(kEffect)); });
  const auto code = text::trim(at(kDelayCode));
  if (!code.empty()) {
    r.delay_code = std::string(code);
  }
  r.delay_mins = cell_double(at(kDelayMins), name(kDelayMins));
  return r;
}

}  // namespace

FlightParseResult parse_flight_csv(std::istream& in, const SchemaOptions& options) {
  std::string line;
  if (!std::getline(in, line)) {
    throw SchemaError("flight CSV is empty (header row is mandatory)");
  }
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) {
    line.erase(0, 3);
  }
  const auto header = text::split_csv_line(line);

  std::array<std::size_t, 21> idx{};
  idx.fill(SIZE_MAX);
  for (std::size_t i = 0; i < header.size(); ++i) {
    const auto h = text::trim(header[i]);
    bool known = false;
    for (std::size_t c = 0; c < kFlightColumns.size(); ++c) {
      if (kFlightColumns[c] == h) {
        if (idx[c] != SIZE_MAX) {
          throw SchemaError("duplicate column '" + std::string(h) + "'");
        }
        idx[c] = i;
        known = true;
      }
    }
    if (!known && !options.allow_extra_columns) {
      throw SchemaError("unexpected column '" + std::string(h) + "'");
    }
  }
  for (std::size_t c = 0; c < kFlightColumns.size(); ++c) {
    if (idx[c] == SIZE_MAX) {
      throw SchemaError("missing column '" + std::string(kFlightColumns[c]) + "'");
    }
  }

  FlightParseResult result;
  std::size_t line_no = 1;
  std::uint64_t data_row = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::trim(line).empty()) {
      continue;
    }
    ++data_row;
    const auto fields = text::split_csv_line(line);
    if (fields.size() != header.size()) {
      result.errors.push_back({line_no, "expected " + std::to_string(header.size()) +
                                            " fields, found " + std::to_string(fields.size())});
      continue;
    }
    try {
      FlightRecord r = parse_row(fields, idx);
      r.source_row = data_row;
      if (auto problem = validate(r)) {
        result.errors.push_back({line_no, *problem});
        continue;
      }
      result.records.push_back(std::move(r));
    } catch (const CellError& e) {
      result.errors.push_back({line_no, e.message});
    }
  }
  return result;
}

FlightParseResult parse_flight_csv(const std::filesystem::path& path, const SchemaOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw SchemaError("cannot open flight CSV " + path.string());
  }
  return parse_flight_csv(in, options);
}

void write_flight_csv(std::ostream& out, const FlightDataset& dataset) {
  for (std::size_t c = 0; c < kFlightColumns.size(); ++c) {
    out << (c ? "," : "") << kFlightColumns[c];
  }
  out << '\n';
  const auto d = [](double v) { return text::format_double(v); };
  for (const auto& r : dataset) {
    out << format_iso_date(r.flight_date) << ',' << text::csv_field(r.orig_iata) << ','
        << text::csv_field(r.dest_iata) << ',' << d(r.orig_lat) << ',' << d(r.orig_lon) << ','
        << d(r.dest_lat) << ',' << d(r.dest_lon) << ',' << r.sched_dep_min << ','
        << r.sched_arr_min << ',' << (r.route_originator ? 1 : 0) << ',' << r.onboard_count << ','
        << d(r.sched_turn_mins) << ',' << d(r.adjst_turn_mins) << ',' << d(r.actl_turn_mins)
        << ',' << text::csv_field(r.sched_acft_code) << ',' << text::csv_field(r.actl_acft_code)
        << ',' << (r.swap_flag ? 1 : 0) << ','
        << (r.functional_domain ? to_string(*r.functional_domain) : "None") << ','
        << to_string(r.disruption_effect) << ','
        << text::csv_field(r.delay_code.value_or(std::string{})) << ',' << d(r.delay_mins)
        << '\n';
  }
}

std::string flight_csv_string(const FlightDataset& dataset) {
  std::ostringstream out;
  write_flight_csv(out, dataset);
  return out.str();
}

}  // namespace irops
