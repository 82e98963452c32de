#include "irops/flight_data/feature_matrix.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>

#include "irops/core/error.hpp"
#include "irops/core/text.hpp"

namespace irops {

std::optional<Eigen::Index> FeatureMatrix::column_index(std::string_view name) const {
  for (std::size_t j = 0; j < descriptors.size(); ++j) {
    if (descriptors[j].name == name) {
      return static_cast<Eigen::Index>(j);
    }
  }
  return std::nullopt;
}

Eigen::Index FeatureMatrix::require_column(std::string_view name) const {
  if (auto j = column_index(name)) {
    return *j;
  }
  throw LookupError("feature '" + std::string(name) + "' not found");
}

std::vector<std::string> FeatureMatrix::column_names() const {
  std::vector<std::string> names;
  names.reserve(descriptors.size());
  for (const auto& d : descriptors) {
    names.push_back(d.name);
  }
  return names;
}

void FeatureMatrix::validate() const {
  if (static_cast<Eigen::Index>(descriptors.size()) != values.cols()) {
    throw DimensionError("descriptor count " + std::to_string(descriptors.size()) +
                         " != column count " + std::to_string(values.cols()));
  }
  if (static_cast<Eigen::Index>(row_ids.size()) != values.rows()) {
    throw DimensionError("row id count does not match row count");
  }
  if (!labels.empty() && static_cast<Eigen::Index>(labels.size()) != values.rows()) {
    throw DimensionError("label count does not match row count");
  }
  std::set<std::string_view> seen;
  for (const auto& d : descriptors) {
    if (!seen.insert(d.name).second) {
      throw DomainError("duplicate feature name '" + d.name + "'");
    }
  }
  if (!values.allFinite()) {
    throw DomainError("feature matrix contains NaN or infinite entries");
  }
}

FeatureMatrix FeatureMatrix::select_columns(const std::vector<std::string>& names) const {
  FeatureMatrix out;
  out.values.resize(values.rows(), static_cast<Eigen::Index>(names.size()));
  for (std::size_t k = 0; k < names.size(); ++k) {
    const auto j = require_column(names[k]);
    out.values.col(static_cast<Eigen::Index>(k)) = values.col(j);
    out.descriptors.push_back(descriptors[static_cast<std::size_t>(j)]);
  }
  out.row_ids = row_ids;
  out.labels = labels;
  return out;
}

FeatureMatrix FeatureMatrix::drop_column(std::string_view name) const {
  std::vector<std::string> keep;
  for (const auto& d : descriptors) {
    if (d.name != name) {
      keep.push_back(d.name);
    }
  }
  return select_columns(keep);
}

FeatureMatrix FeatureMatrix::select_rows(std::span<const std::size_t> rows) const {
  FeatureMatrix out;
  out.descriptors = descriptors;
  out.values.resize(static_cast<Eigen::Index>(rows.size()), values.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] >= static_cast<std::size_t>(values.rows())) {
      throw DimensionError("row index out of range");
    }
    out.values.row(static_cast<Eigen::Index>(i)) = values.row(static_cast<Eigen::Index>(rows[i]));
    out.row_ids.push_back(row_ids[rows[i]]);
    if (!labels.empty()) {
      out.labels.push_back(labels[rows[i]]);
    }
  }
  return out;
}

void write_feature_csv(std::ostream& out, const FeatureMatrix& fm) {
  out << "row_id,label";
  for (const auto& d : fm.descriptors) {
    out << ',' << text::csv_field(d.name);
  }
  out << '\n';
  for (Eigen::Index i = 0; i < fm.rows(); ++i) {
    out << text::csv_field(fm.row_ids[static_cast<std::size_t>(i)]) << ','
        << text::csv_field(fm.labels.empty() ? std::string{} : fm.labels[static_cast<std::size_t>(i)]);
    for (Eigen::Index j = 0; j < fm.cols(); ++j) {
      out << ',' << text::format_double(fm.values(i, j));
    }
    out << '\n';
  }
}

void write_descriptor_csv(std::ostream& out, const std::vector<FeatureDescriptor>& descriptors) {
  out << "name,abstraction_class,category,temporal_subtype\n";
  for (const auto& d : descriptors) {
    out << text::csv_field(d.name) << ',' << to_string(d.abstraction_class) << ','
        << to_string(d.category) << ','
        << (d.temporal_subtype ? to_string(*d.temporal_subtype) : std::string_view{}) << '\n';
  }
}

std::vector<FeatureDescriptor> read_descriptor_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    throw SchemaError("descriptor CSV is empty");
  }
  std::vector<FeatureDescriptor> out;
  while (std::getline(in, line)) {
    if (text::trim(line).empty()) {
      continue;
    }
    const auto f = text::split_csv_line(line);
    if (f.size() != 4) {
      throw SchemaError("descriptor CSV row must have 4 fields");
    }
    std::optional<TemporalSubtype> sub;
    if (!text::trim(f[3]).empty()) {
      sub = parse_temporal_subtype(f[3]);
    }
    out.push_back(make_descriptor(f[0], parse_abstraction_class(f[1]),
                                  parse_feature_category(f[2]), sub));
  }
  return out;
}

FeatureMatrix read_feature_csv(std::istream& in, const std::vector<FeatureDescriptor>* descriptors) {
  std::string line;
  if (!std::getline(in, line)) {
    throw SchemaError("feature CSV is empty");
  }
  const auto header = text::split_csv_line(line);
  if (header.size() < 2 || header[0] != "row_id" || header[1] != "label") {
    throw SchemaError("feature CSV must start with columns row_id,label");
  }
  FeatureMatrix fm;
  for (std::size_t c = 2; c < header.size(); ++c) {
    const std::string& name = header[c];
    std::optional<FeatureDescriptor> d;
    if (descriptors != nullptr) {
      for (const auto& cand : *descriptors) {
        if (cand.name == name) {
          d = cand;
        }
      }
    }
    if (!d) {
      d = find_descriptor(name);
    }
    if (!d) {
      d = make_descriptor(name, AbstractionClass::Epistemic, FeatureCategory::Continuous);
    }
    fm.descriptors.push_back(*d);
  }
  std::vector<std::vector<double>> rows;
  std::size_t line_no = 1;
  bool any_label = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::trim(line).empty()) {
      continue;
    }
    const auto f = text::split_csv_line(line);
    if (f.size() != header.size()) {
      throw SchemaError("feature CSV line " + std::to_string(line_no) + ": expected " +
                        std::to_string(header.size()) + " fields");
    }
    fm.row_ids.push_back(f[0]);
    fm.labels.push_back(f[1]);
    any_label = any_label || !f[1].empty();
    std::vector<double> row(header.size() - 2);
    for (std::size_t c = 2; c < f.size(); ++c) {
      if (!text::parse_double(f[c], row[c - 2])) {
        throw SchemaError("feature CSV line " + std::to_string(line_no) + ": bad number in column '" +
                          header[c] + "'");
      }
    }
    rows.push_back(std::move(row));
  }
  if (!any_label) {
    fm.labels.clear();
  }
  fm.values.resize(static_cast<Eigen::Index>(rows.size()),
                   static_cast<Eigen::Index>(header.size() - 2));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      fm.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  fm.validate();
  return fm;
}

std::filesystem::path descriptor_sidecar_path(const std::filesystem::path& feature_csv) {
  auto p = feature_csv;
  p.replace_filename(feature_csv.stem().string() + ".descriptors.csv");
  return p;
}

FeatureMatrix read_feature_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw SchemaError("cannot open feature CSV " + path.string());
  }
  const auto sidecar = descriptor_sidecar_path(path);
  if (std::filesystem::exists(sidecar)) {
    std::ifstream sin(sidecar, std::ios::binary);
    const auto descriptors = read_descriptor_csv(sin);
    return read_feature_csv(in, &descriptors);
  }
  return read_feature_csv(in);
}

}  // namespace irops
