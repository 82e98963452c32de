#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "irops/cli/manifest.hpp"
#include "irops/dimred/pca.hpp"
#include "irops/dimred/tsne.hpp"
#include "irops/featsel/gpr.hpp"
#include "irops/featsel/mutual_info.hpp"
#include "irops/features/engineer.hpp"
#include "irops/features/scaler.hpp"
#include "irops/flight_data/disruption_report.hpp"

// Building blocks shared by the single subcommands and `pipeline`. Each stage
// takes in-memory inputs and writes its CSV artifacts through an ArtifactWriter.
namespace irops::cli {

/// Domain/effect restriction; unset fields keep every value.
struct SubsetFilter {
  std::optional<FunctionalDomain> domain;
  std::optional<DisruptionEffect> effect;
};

/// Accepts a domain name or "all".
std::optional<FunctionalDomain> parse_domain_filter(const std::string& s);
std::optional<DisruptionEffect> parse_effect_filter(const std::string& s);
std::string describe(const SubsetFilter& f);

FlightDataset apply_filter(const FlightDataset& dataset, const SubsetFilter& filter);

/// Loads a flight CSV; malformed rows are skipped and reported in `warnings`.
FlightDataset load_flights(const std::filesystem::path& path, std::vector<std::string>* warnings);

DisruptionReport run_report_stage(const FlightDataset& dataset, ArtifactWriter& out);

struct TransformParams {
  features::ScalerMethod scaler = features::ScalerMethod::Standard;
  features::EngineerOptions engineer;
  SubsetFilter subset;
  std::string suffix;  ///< appended to artifact names, e.g. "_range"
};

struct TransformResult {
  FeatureMatrix raw;
  FeatureMatrix scaled;
  features::ScalerModel scaler;
  std::size_t excluded = 0;
};

/// Writes features<suffix>.csv, its descriptor sidecar, and scaler<suffix>.txt.
TransformResult run_transform_stage(const FlightDataset& dataset, const TransformParams& params,
                                    ArtifactWriter& out);

/// Drops `target` when the matrix carries it.
FeatureMatrix without_column(const FeatureMatrix& x, const std::string& target);

/// Writes pca_embedding.csv, pca_spectrum.csv and pca_components.csv.
dimred::PcaModel run_pca_stage(const FeatureMatrix& x, int dims, ArtifactWriter& out);

struct TsneStageParams {
  dimred::TsneParams tsne;
  std::size_t max_rows = 2000;  ///< larger inputs are subsampled with the t-SNE seed
};

/// Writes tsne_embedding.csv and tsne_kl_trace.csv.
dimred::TsneResult run_tsne_stage(const FeatureMatrix& x, const TsneStageParams& params,
                                  ArtifactWriter& out);

/// Writes mir_scores.csv. Throws LookupError("target feature not found: ...").
featsel::MirScores run_mir_stage(const FeatureMatrix& x, const std::string& target, int k,
                                 std::uint64_t seed, ArtifactWriter& out);

struct GprStageParams {
  std::string target = "ACTL_TURN_MINS";
  /// Input columns; empty selects the turnaround regression features present
  /// in the matrix, or every non-target column when none is.
  std::vector<std::string> features;
  double split_fraction = 0.7;
  std::uint64_t split_seed = 0;
  std::uint64_t fit_seed = 0;
  int restarts = 5;
  std::size_t max_rows = 700;  ///< rows kept before the split, subsampled with split_seed
  bool log_target = false;
  /// Scaler that produced the matrix; when set the target is mapped back to
  /// its original units before fitting (needed for log_target on scaled data).
  std::optional<features::ScalerModel> scaler;
};

struct GprStageResult {
  featsel::GprModel model;
  std::vector<std::string> features;
  std::size_t n_train = 0;
  std::size_t n_test = 0;
  double rmse_standardized = 0.0;
  double rmse = 0.0;
  double coverage_3sd = 0.0;
  double qq_max_gap = 0.0;
  double qq_central_gap = 0.0;
};

/// Writes gpr_lengthscales.csv, gpr_predictions.csv, gpr_qq.csv and gpr_summary.txt.
GprStageResult run_gpr_stage(const FeatureMatrix& x, const GprStageParams& params,
                             ArtifactWriter& out);

}  // namespace irops::cli
