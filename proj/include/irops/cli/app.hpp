#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "irops/cli/pipeline_config.hpp"

namespace irops::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainError = 1;
inline constexpr int kExitUsageError = 2;

/// Runs one subcommand. `args` excludes the program name, e.g.
/// {"synth", "--n", "1000"}. Returns 0 on success, 1 on a library error and
/// 2 on a usage error; diagnostics go to `err`.
int run_subcommand(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run_subcommand(int argc, const char* const* argv);

struct PipelineSummary {
  std::filesystem::path manifest;
  std::size_t flights = 0;
  std::size_t subset_rows = 0;
  double gpr_rmse_standardized = 0.0;
};

/// Whole chain: synthesize or load flights, report, transform twice (dimred
/// and featsel scalers), PCA, t-SNE, MIR and GPR. Stage seeds are derived
/// from config.seed with the labels synth, tsne, mir, split and gpr.
PipelineSummary run_pipeline(const PipelineConfig& config, std::ostream& log);

}  // namespace irops::cli
