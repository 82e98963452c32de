#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace irops {

/// Planning-phase abstraction of a feature.
///  - DeterminateAleatoric: fixed at strategic planning, essentially never altered in recovery.
///  - IndeterminateAleatoric: disruption-type indicator arising randomly during execution.
///  - Epistemic: set in tactical/operational planning and alterable during recovery.
enum class AbstractionClass : std::uint8_t { DeterminateAleatoric, IndeterminateAleatoric, Epistemic };

enum class FeatureCategory : std::uint8_t { Geographical, Temporal, Categorical, Continuous };

enum class TemporalSubtype : std::uint8_t { Ordinal, Interval, Cyclic, Branching };

std::string_view to_string(AbstractionClass c) noexcept;
std::string_view to_string(FeatureCategory c) noexcept;
std::string_view to_string(TemporalSubtype t) noexcept;

/// Human-readable class label, e.g. "Determinate Aleatoric".
std::string_view display_name(AbstractionClass c) noexcept;

AbstractionClass parse_abstraction_class(std::string_view s);
FeatureCategory parse_feature_category(std::string_view s);
TemporalSubtype parse_temporal_subtype(std::string_view s);

struct FeatureDescriptor {
  std::string name;
  AbstractionClass abstraction_class = AbstractionClass::DeterminateAleatoric;
  FeatureCategory category = FeatureCategory::Continuous;
  /// Present exactly when category is Temporal.
  std::optional<TemporalSubtype> temporal_subtype;

  bool operator==(const FeatureDescriptor&) const = default;
};

/// Throws DomainError when temporal_subtype presence disagrees with the category.
FeatureDescriptor make_descriptor(std::string name, AbstractionClass cls, FeatureCategory cat,
                                  std::optional<TemporalSubtype> sub = std::nullopt);

/// Built-in taxonomy for every feature the engineering stage emits, including
/// the weather delay codes. Names are unique.
const std::vector<FeatureDescriptor>& default_descriptors();

/// Lookup in default_descriptors(); nullopt for names it does not know.
std::optional<FeatureDescriptor> find_descriptor(std::string_view name);

/// Weather delay codes with a built-in descriptor, in taxonomy order.
const std::vector<std::string>& weather_delay_codes();

/// Column names of the target and fixed input features.
namespace feature_names {
inline constexpr std::string_view kActualTurn = "ACTL_TURN_MINS";
inline constexpr std::string_view kAdjustedTurn = "ADJST_TURN_MINS";
inline constexpr std::string_view kScheduledTurn = "SCHED_TURN_MINS";
inline constexpr std::string_view kOnboard = "ONBD_CT";
inline constexpr std::string_view kSwap = "SWAP_FLT_FLAG";
inline constexpr std::string_view kSchedAircraft = "schd_acft_type";
inline constexpr std::string_view kActualAircraft = "actl_acft_type";
inline constexpr std::string_view kRouteOriginator = "ROUTE_ORIGINATOR";
inline constexpr std::string_view kRouteDistance = "ROUTE_DIST_M";
inline constexpr std::string_view kDelayMins = "DELAY_MINS";
}  // namespace feature_names

/// The eighteen-feature set used for turnaround regression, in report order.
const std::vector<std::string>& turnaround_regression_features();

}  // namespace irops
