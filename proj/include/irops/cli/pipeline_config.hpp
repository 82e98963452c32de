#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "irops/core/keyed_text.hpp"
#include "irops/features/scaler.hpp"
#include "irops/features/time_encoding.hpp"
#include "irops/cli/stages.hpp"

namespace irops::cli {

/// End-to-end run description, read from a keyed text file.
///
/// Keys (all optional):
///   seed, input, synth.config, synth.n_total, output_dir, target,
///   subset.domain, subset.effect, dimred.scaler, featsel.scaler,
///   shifts.starts (comma list of minutes), shifts.length, seat_map (file),
///   pca.dims, tsne.perplexity, tsne.iters, tsne.learning_rate,
///   tsne.early_exaggeration, tsne.max_rows, mir.k_neighbors,
///   gpr.restarts, gpr.max_rows, gpr.log_target, gpr.features (comma list),
///   split.fraction.
/// Relative paths are resolved against the config file's directory.
struct PipelineConfig {
  std::uint64_t seed = 42;
  std::optional<std::filesystem::path> input;        ///< flight CSV; synthesized when absent
  std::optional<std::filesystem::path> synth_config;  ///< keyed synth overrides
  std::uint64_t n_total = 20000;
  std::filesystem::path output_dir = "irops_out";
  std::string target = "ACTL_TURN_MINS";
  SubsetFilter subset{FunctionalDomain::Weather, DisruptionEffect::Delayed};
  features::ScalerMethod dimred_scaler = features::ScalerMethod::Range;
  features::ScalerMethod featsel_scaler = features::ScalerMethod::Standard;
  features::ShiftSchedule shifts;
  std::optional<std::filesystem::path> seat_map;
  int pca_dims = 2;
  double tsne_perplexity = 30.0;
  int tsne_iters = 1000;
  double tsne_learning_rate = 200.0;
  double tsne_early_exaggeration = 12.0;
  std::size_t tsne_max_rows = 1000;
  int mir_k = 3;
  int gpr_restarts = 5;
  std::size_t gpr_max_rows = 700;
  bool gpr_log_target = false;
  std::vector<std::string> gpr_features;
  double split_fraction = 0.7;

  /// Throws ConfigError for out-of-range values.
  void validate() const;
};

PipelineConfig pipeline_config_from_keyed(const KeyedText& doc,
                                          const std::filesystem::path& base_dir = {});
KeyedText pipeline_config_to_keyed(const PipelineConfig& config);

/// `code = seats` lines.
std::map<std::string, int> read_seat_map(const std::filesystem::path& path);

/// Parses "360,840,1320".
std::vector<int> parse_int_list(const std::string& s);
std::vector<std::string> parse_name_list(const std::string& s);

}  // namespace irops::cli
