#include "irops/flight_data/feature_taxonomy.hpp"

#include <array>

#include "irops/core/error.hpp"
#include "irops/core/text.hpp"

namespace irops {

namespace {

constexpr std::array<std::string_view, 3> kClassNames{"DeterminateAleatoric",
                                                      "IndeterminateAleatoric", "Epistemic"};
constexpr std::array<std::string_view, 3> kClassDisplay{"Determinate Aleatoric",
                                                        "Indeterminate Aleatoric", "Epistemic"};
constexpr std::array<std::string_view, 4> kCategoryNames{"Geographical", "Temporal", "Categorical",
                                                         "Continuous"};
constexpr std::array<std::string_view, 4> kSubtypeNames{"Ordinal", "Interval", "Cyclic",
                                                        "Branching"};

template <typename E, std::size_t N>
E parse_named(std::string_view s, const std::array<std::string_view, N>& names, const char* what) {
  s = text::trim(s);
  for (std::size_t i = 0; i < N; ++i) {
    if (names[i] == s) {
      return static_cast<E>(i);
    }
  }
  throw DomainError(std::string("unknown ") + what + " '" + std::string(s) + "'");
}

std::vector<FeatureDescriptor> build_taxonomy() {
  using AC = AbstractionClass;
  using FC = FeatureCategory;
  using TS = TemporalSubtype;
  namespace fn = feature_names;
  std::vector<FeatureDescriptor> t;
  const auto add = [&](std::string_view name, AC c, FC cat, std::optional<TS> sub = std::nullopt) {
    t.push_back(make_descriptor(std::string(name), c, cat, sub));
  };

  // Flight date, four periodic encodings.
  for (const auto* name : {"sin_season", "cos_season", "sin_moy", "cos_moy", "sin_dow", "cos_dow",
                           "sin_date", "cos_date"}) {
    add(name, AC::DeterminateAleatoric, FC::Temporal, TS::Cyclic);
  }
  // Stations as unit direction vectors, plus great-ellipse distance.
  for (const auto* name : {"orig_x_dir", "orig_y_dir", "orig_z_dir", "dest_x_dir", "dest_y_dir",
                           "dest_z_dir"}) {
    add(name, AC::DeterminateAleatoric, FC::Geographical);
  }
  add(fn::kRouteDistance, AC::DeterminateAleatoric, FC::Geographical);
  add(fn::kRouteOriginator, AC::DeterminateAleatoric, FC::Geographical);
  // Scheduled times of day: 24-h clock and work-shift progress.
  for (const auto* name : {"sin_dep_24h", "cos_dep_24h", "dep_shift_frac", "dep_shift_cos",
                           "sin_arr_24h", "cos_arr_24h", "arr_shift_frac", "arr_shift_cos"}) {
    add(name, AC::DeterminateAleatoric, FC::Temporal, TS::Ordinal);
  }
  add(fn::kOnboard, AC::DeterminateAleatoric, FC::Continuous);
  add(fn::kScheduledTurn, AC::DeterminateAleatoric, FC::Temporal, TS::Interval);
  add(fn::kAdjustedTurn, AC::Epistemic, FC::Temporal, TS::Interval);
  add(fn::kActualTurn, AC::Epistemic, FC::Temporal, TS::Interval);
  add(fn::kSchedAircraft, AC::DeterminateAleatoric, FC::Categorical);
  add(fn::kActualAircraft, AC::Epistemic, FC::Categorical);
  add(fn::kSwap, AC::Epistemic, FC::Categorical);
  add(fn::kDelayMins, AC::IndeterminateAleatoric, FC::Temporal, TS::Interval);
  for (const auto& code : weather_delay_codes()) {
    add(code, AC::IndeterminateAleatoric, FC::Categorical);
  }
  return t;
}

}  // namespace

std::string_view to_string(AbstractionClass c) noexcept { return kClassNames[static_cast<std::size_t>(c)]; }
std::string_view to_string(FeatureCategory c) noexcept { return kCategoryNames[static_cast<std::size_t>(c)]; }
std::string_view to_string(TemporalSubtype t) noexcept { return kSubtypeNames[static_cast<std::size_t>(t)]; }
std::string_view display_name(AbstractionClass c) noexcept {
  return kClassDisplay[static_cast<std::size_t>(c)];
}

AbstractionClass parse_abstraction_class(std::string_view s) {
  return parse_named<AbstractionClass>(s, kClassNames, "abstraction class");
}
FeatureCategory parse_feature_category(std::string_view s) {
  return parse_named<FeatureCategory>(s, kCategoryNames, "feature category");
}
TemporalSubtype parse_temporal_subtype(std::string_view s) {
  return parse_named<TemporalSubtype>(s, kSubtypeNames, "temporal subtype");
}

FeatureDescriptor make_descriptor(std::string name, AbstractionClass cls, FeatureCategory cat,
                                  std::optional<TemporalSubtype> sub) {
  if ((cat == FeatureCategory::Temporal) != sub.has_value()) {
    throw DomainError("feature '" + name +
                      "': temporal subtype must be given exactly for temporal features");
  }
  return FeatureDescriptor{std::move(name), cls, cat, sub};
}

const std::vector<std::string>& weather_delay_codes() {
  static const std::vector<std::string> codes{
      "ATC Hold at Origin", "ATC Hold at Destination", "Deicing at Gate", "Ice on Wings",
      "Lightning Strike",   "Turbulence",              "Hail or Snow Damage"};
  return codes;
}

const std::vector<FeatureDescriptor>& default_descriptors() {
  static const std::vector<FeatureDescriptor> taxonomy = build_taxonomy();
  return taxonomy;
}

std::optional<FeatureDescriptor> find_descriptor(std::string_view name) {
  for (const auto& d : default_descriptors()) {
    if (d.name == name) {
      return d;
    }
  }
  return std::nullopt;
}

const std::vector<std::string>& turnaround_regression_features() {
  static const std::vector<std::string> names{
      "sin_date",         "cos_date",
      "orig_x_dir",       "orig_y_dir",
      "orig_z_dir",       std::string(feature_names::kOnboard),
      std::string(feature_names::kScheduledTurn), std::string(feature_names::kAdjustedTurn),
      std::string(feature_names::kSchedAircraft), std::string(feature_names::kActualAircraft),
      std::string(feature_names::kSwap), "ATC Hold at Origin",
      "ATC Hold at Destination", "Deicing at Gate",
      "Ice on Wings",     "Lightning Strike",
      "Turbulence",       "Hail or Snow Damage"};
  return names;
}

}  // namespace irops
