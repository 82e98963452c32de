#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "irops/flight_data/feature_taxonomy.hpp"

namespace irops {

/// Numeric n x m design matrix with per-column metadata.
///
/// `labels` is optional per-row annotation (the delay code for flight data)
/// carried through to embedding outputs; it is either empty or has n entries.
struct FeatureMatrix {
  Eigen::MatrixXd values;
  std::vector<FeatureDescriptor> descriptors;
  std::vector<std::string> row_ids;
  std::vector<std::string> labels;

  [[nodiscard]] Eigen::Index rows() const noexcept { return values.rows(); }
  [[nodiscard]] Eigen::Index cols() const noexcept { return values.cols(); }

  [[nodiscard]] std::optional<Eigen::Index> column_index(std::string_view name) const;
  /// Throws LookupError when absent.
  [[nodiscard]] Eigen::Index require_column(std::string_view name) const;
  [[nodiscard]] std::vector<std::string> column_names() const;

  /// Throws on shape mismatch, duplicate names, or non-finite entries.
  void validate() const;

  [[nodiscard]] FeatureMatrix select_columns(const std::vector<std::string>& names) const;
  [[nodiscard]] FeatureMatrix drop_column(std::string_view name) const;
  [[nodiscard]] FeatureMatrix select_rows(std::span<const std::size_t> rows) const;
};

/// CSV layout: `row_id,label,<feature names...>`.
void write_feature_csv(std::ostream& out, const FeatureMatrix& fm);
/// Descriptor table: `name,abstraction_class,category,temporal_subtype`.
void write_descriptor_csv(std::ostream& out, const std::vector<FeatureDescriptor>& descriptors);

std::vector<FeatureDescriptor> read_descriptor_csv(std::istream& in);

/// Reads a feature CSV. Descriptors come from `descriptors` when given,
/// otherwise from the built-in taxonomy, and default to Epistemic/Continuous
/// for names the taxonomy does not know.
FeatureMatrix read_feature_csv(std::istream& in,
                               const std::vector<FeatureDescriptor>* descriptors = nullptr);

/// Reads `path`, picking up the sidecar `<stem>.descriptors.csv` when it exists.
FeatureMatrix read_feature_csv(const std::filesystem::path& path);

std::filesystem::path descriptor_sidecar_path(const std::filesystem::path& feature_csv);

}  // namespace irops
