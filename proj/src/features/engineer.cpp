#include "irops/features/engineer.hpp"

#include <vector>

#include "irops/core/error.hpp"
#include "irops/features/categorical.hpp"
#include "irops/features/geodesy.hpp"

namespace irops::features {

namespace {

FeatureDescriptor descriptor_for(const std::string& name) {
  if (auto d = find_descriptor(name)) {
    return *d;
  }
  // Delay codes outside the built-in weather taxonomy are still disruption
  // indicators.
  return make_descriptor(name, AbstractionClass::IndeterminateAleatoric,
                         FeatureCategory::Categorical);
}

}  // namespace

EngineeredFeatures engineer_features(const FlightDataset& dataset, const EngineerOptions& options) {
  validate(options.shifts);
  EngineeredFeatures result;

  std::vector<const FlightRecord*> kept;
  for (const auto& r : dataset) {
    if (r.disruption_effect == DisruptionEffect::Cancelled ||
        r.disruption_effect == DisruptionEffect::Diverted) {
      ++result.excluded_cancelled_or_diverted;
    } else {
      kept.push_back(&r);
    }
  }
  if (kept.empty()) {
    throw EmptyInputError("no delayed or undisrupted flights to engineer features from");
  }

  std::vector<std::string> codes;
  codes.reserve(kept.size());
  for (const auto* r : kept) {
    codes.push_back(r->delay_code.value_or(std::string(kNoDelayLabel)));
  }
  const auto code_encoding = one_hot(codes);

  namespace fn = feature_names;
  std::vector<std::string> names{
      "sin_season",  "cos_season",  "sin_moy",     "cos_moy",     "sin_dow",
      "cos_dow",     "sin_date",    "cos_date",    "orig_x_dir",  "orig_y_dir",
      "orig_z_dir",  "dest_x_dir",  "dest_y_dir",  "dest_z_dir",  std::string(fn::kRouteDistance),
      std::string(fn::kRouteOriginator), "sin_dep_24h", "cos_dep_24h", "dep_shift_frac",
      "dep_shift_cos", "sin_arr_24h", "cos_arr_24h", "arr_shift_frac", "arr_shift_cos",
      std::string(fn::kOnboard), std::string(fn::kScheduledTurn), std::string(fn::kAdjustedTurn),
      std::string(fn::kSchedAircraft), std::string(fn::kActualAircraft), std::string(fn::kSwap),
      std::string(fn::kDelayMins)};
  const auto first_code_col = static_cast<Eigen::Index>(names.size());
  names.insert(names.end(), code_encoding.names.begin(), code_encoding.names.end());
  if (options.include_target) {
    names.emplace_back(fn::kActualTurn);
  }

  FeatureMatrix& fm = result.matrix;
  for (const auto& n : names) {
    fm.descriptors.push_back(descriptor_for(n));
  }
  fm.values.resize(static_cast<Eigen::Index>(kept.size()), static_cast<Eigen::Index>(names.size()));
  const VincentyOptions geo{.haversine_fallback = options.vincenty_fallback};

  for (std::size_t k = 0; k < kept.size(); ++k) {
    const FlightRecord& r = *kept[k];
    auto row = fm.values.row(static_cast<Eigen::Index>(k));
    Eigen::Index c = 0;
    const auto put = [&](double v) { row(c++) = v; };
    const auto put_pair = [&](CyclicPair p) {
      put(p.sin);
      put(p.cos);
    };

    const auto date = encode_date(r.flight_date);
    put_pair(date.season);
    put_pair(date.month);
    put_pair(date.dow);
    put_pair(date.doy);

    const auto o = latlon_to_unit_vector(r.orig_lat, r.orig_lon);
    const auto d = latlon_to_unit_vector(r.dest_lat, r.dest_lon);
    put(o.x);
    put(o.y);
    put(o.z);
    put(d.x);
    put(d.y);
    put(d.z);
    put(vincenty_distance({r.orig_lat, r.orig_lon}, {r.dest_lat, r.dest_lon}, geo));
    put(r.route_originator ? 1.0 : 0.0);

    for (const int t : {r.sched_dep_min, r.sched_arr_min}) {
      put_pair(encode_time_of_day(t));
      const auto shift = encode_shift_fraction(t, options.shifts);
      put(shift.fraction);
      put(shift.cos_component);
    }

    put(r.onboard_count);
    put(r.sched_turn_mins);
    put(r.adjst_turn_mins);
    put(aircraft_seats(r.sched_acft_code, options.seat_map));
    put(aircraft_seats(r.actl_acft_code, options.seat_map));
    put(r.swap_flag ? 1.0 : 0.0);
    put(r.delay_mins);

    row.segment(first_code_col, code_encoding.indicators.cols()) =
        code_encoding.indicators.row(static_cast<Eigen::Index>(k));
    c += code_encoding.indicators.cols();
    if (options.include_target) {
      put(r.actl_turn_mins);
    }

    fm.row_ids.push_back(std::to_string(r.source_row));
    fm.labels.push_back(codes[k]);
  }
  fm.validate();
  return result;
}

}  // namespace irops::features
