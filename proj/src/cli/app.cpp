#include "irops/cli/app.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <iostream>
#include <sstream>

#include "irops/core/error.hpp"
#include "irops/core/rng.hpp"
#include "irops/core/text.hpp"
#include "irops/flight_data/flight_csv.hpp"
#include "irops/synth/synth.hpp"

namespace irops::cli {

namespace fs = std::filesystem;

namespace {

struct Options {
  // shared
  std::string input;
  std::string out_dir = ".";
  std::string config;
  std::string target = "ACTL_TURN_MINS";
  std::uint64_t seed = 0;
  // synth
  std::uint64_t n = 20000;
  std::uint64_t synth_seed = 42;
  // transform
  std::string scaler = "standard";
  std::string shifts = "360,840,1320";
  int shift_length = 480;
  std::string seat_map;
  std::string domain = "all";
  std::string effect = "all";
  // pca
  int dims = 2;
  // tsne
  double perplexity = 30.0;
  int iters = 1000;
  double learning_rate = 200.0;
  std::size_t max_rows = 0;
  // mir
  int k_neighbors = 3;
  // gpr
  int restarts = 5;
  double split = 0.7;
  std::string features;
  bool log_target = false;
  std::string scaler_params;
};

void print_warnings(const std::vector<std::string>& w, std::ostream& err) {
  for (const auto& s : w) {
    err << "warning: " << s << '\n';
  }
}

int cmd_synth(const Options& o, bool n_given, bool seed_given, std::ostream& out) {
  synth::SynthConfig cfg = synth::default_table1_config(o.n, o.synth_seed);
  RunManifest manifest("synth");
  if (!o.config.empty()) {
    cfg = synth::config_from_keyed(KeyedText::read_file(o.config), cfg);
    manifest.add_input(o.config);
    if (n_given) {
      cfg.n_total = o.n;
    }
    if (seed_given) {
      cfg.seed = o.synth_seed;
    }
  }
  const FlightDataset ds = synth::generate(cfg);
  ArtifactWriter w(o.out_dir, manifest);
  manifest.set_seed("synth", cfg.seed);
  manifest.set_param("n_total", std::to_string(cfg.n_total));
  w.write("flights.csv", flight_csv_string(ds));
  w.write("synth_config.txt", synth::config_to_keyed(cfg).to_string());
  const fs::path m = w.finish();
  out << "wrote " << ds.size() << " flights to " << (w.dir() / "flights.csv").string() << '\n'
      << "manifest " << m.string() << '\n';
  return kExitOk;
}

int cmd_report(const Options& o, std::ostream& out, std::ostream& err) {
  RunManifest manifest("report");
  manifest.add_input(o.input);
  std::vector<std::string> warnings;
  const FlightDataset ds = load_flights(o.input, &warnings);
  print_warnings(warnings, err);
  ArtifactWriter w(o.out_dir, manifest);
  const DisruptionReport rep = run_report_stage(ds, w);
  manifest.set_param("skipped_rows", std::to_string(warnings.size()));
  w.finish();
  out << rep.to_text();
  return kExitOk;
}

features::EngineerOptions engineer_options(const std::string& shifts, int shift_length,
                                           const std::string& seat_map) {
  features::EngineerOptions e;
  e.shifts.starts = parse_int_list(shifts);
  e.shifts.length = shift_length;
  features::validate(e.shifts);
  e.seat_map = seat_map.empty() ? synth::default_table1_config(1).seat_map
                                : read_seat_map(seat_map);
  return e;
}

int cmd_transform(const Options& o, std::ostream& out, std::ostream& err) {
  RunManifest manifest("transform");
  manifest.add_input(o.input);
  TransformParams p;
  p.scaler = features::parse_scaler_method(o.scaler);
  p.engineer = engineer_options(o.shifts, o.shift_length, o.seat_map);
  if (!o.seat_map.empty()) {
    manifest.add_input(o.seat_map);
  }
  p.subset = {parse_domain_filter(o.domain), parse_effect_filter(o.effect)};
  std::vector<std::string> warnings;
  const FlightDataset ds = load_flights(o.input, &warnings);
  ArtifactWriter w(o.out_dir, manifest);
  const TransformResult r = run_transform_stage(ds, p, w);
  warnings.insert(warnings.end(), r.scaler.warnings.begin(), r.scaler.warnings.end());
  print_warnings(warnings, err);
  manifest.set_param("scaler", o.scaler);
  manifest.set_param("subset", describe(p.subset));
  manifest.set_param("shifts", o.shifts);
  manifest.set_param("shift_length", std::to_string(o.shift_length));
  manifest.set_param("excluded_cancelled_or_diverted", std::to_string(r.excluded));
  w.finish();
  out << "features " << r.scaled.rows() << " x " << r.scaled.cols() << " ("
      << r.excluded << " cancelled/diverted flights excluded)\n";
  return kExitOk;
}

FeatureMatrix load_features(const std::string& path, RunManifest& manifest) {
  manifest.add_input(path);
  FeatureMatrix fm = read_feature_csv(fs::path(path));
  fm.validate();
  return fm;
}

int cmd_pca(const Options& o, std::ostream& out) {
  RunManifest manifest("pca");
  const FeatureMatrix fm = without_column(load_features(o.input, manifest), o.target);
  ArtifactWriter w(o.out_dir, manifest);
  const dimred::PcaModel m = run_pca_stage(fm, o.dims, w);
  manifest.set_param("dims", std::to_string(o.dims));
  manifest.set_param("dropped_target", o.target);
  w.finish();
  for (Eigen::Index k = 0; k < m.eigenvalues.size(); ++k) {
    out << "component " << (k + 1) << ": eigenvalue " << text::format_double(m.eigenvalues(k))
        << ", explained " << text::format_double(100.0 * m.explained_variance_ratio(k)) << "%\n";
  }
  return kExitOk;
}

int cmd_tsne(const Options& o, std::ostream& out) {
  RunManifest manifest("tsne");
  const FeatureMatrix fm = without_column(load_features(o.input, manifest), o.target);
  TsneStageParams p;
  p.tsne.perplexity = o.perplexity;
  p.tsne.n_iter = o.iters;
  p.tsne.learning_rate = o.learning_rate;
  p.tsne.seed = derive_seed(o.seed, "tsne");
  if (o.max_rows > 0) {
    p.max_rows = o.max_rows;
  }
  ArtifactWriter w(o.out_dir, manifest);
  const dimred::TsneResult r = run_tsne_stage(fm, p, w);
  manifest.set_seed("root", o.seed);
  manifest.set_seed("tsne", p.tsne.seed);
  manifest.set_param("perplexity", text::format_double(o.perplexity));
  manifest.set_param("iters", std::to_string(o.iters));
  manifest.set_param("learning_rate", text::format_double(o.learning_rate));
  manifest.set_param("max_rows", std::to_string(p.max_rows));
  w.finish();
  out << "embedded " << r.embedding.rows() << " rows, final KL " << text::format_double(r.final_kl())
      << '\n';
  return kExitOk;
}

int cmd_mir(const Options& o, std::ostream& out, std::ostream& err) {
  RunManifest manifest("mir");
  const FeatureMatrix fm = load_features(o.input, manifest);
  ArtifactWriter w(o.out_dir, manifest);
  const std::uint64_t seed = derive_seed(o.seed, "mir");
  const featsel::MirScores s = run_mir_stage(fm, o.target, o.k_neighbors, seed, w);
  print_warnings(s.warnings, err);
  manifest.set_seed("root", o.seed);
  manifest.set_seed("mir", seed);
  manifest.set_param("k_neighbors", std::to_string(o.k_neighbors));
  manifest.set_param("target", o.target);
  w.finish();
  for (std::size_t i = 0; i < std::min<std::size_t>(5, s.entries.size()); ++i) {
    out << (i + 1) << ". " << s.entries[i].name << " " << text::format_double(s.entries[i].mi_nats)
        << " nats\n";
  }
  return kExitOk;
}

int cmd_gpr(const Options& o, std::ostream& out, std::ostream& err) {
  RunManifest manifest("gpr");
  const FeatureMatrix fm = load_features(o.input, manifest);
  GprStageParams p;
  p.target = o.target;
  p.features = parse_name_list(o.features);
  p.split_fraction = o.split;
  p.split_seed = derive_seed(o.seed, "split");
  p.fit_seed = derive_seed(o.seed, "gpr");
  p.restarts = o.restarts;
  p.max_rows = o.max_rows > 0 ? o.max_rows : 700;
  p.log_target = o.log_target;
  if (!o.scaler_params.empty()) {
    manifest.add_input(o.scaler_params);
    p.scaler = features::scaler_from_keyed(KeyedText::read_file(o.scaler_params));
  }
  if (!fm.column_index(p.target)) {
    throw LookupError("target feature not found: '" + p.target + "'");
  }
  ArtifactWriter w(o.out_dir, manifest);
  const GprStageResult r = run_gpr_stage(fm, p, w);
  manifest.set_seed("root", o.seed);
  manifest.set_seed("split", p.split_seed);
  manifest.set_seed("gpr", p.fit_seed);
  manifest.set_param("target", p.target);
  manifest.set_param("split", text::format_double(p.split_fraction));
  manifest.set_param("restarts", std::to_string(p.restarts));
  manifest.set_param("max_rows", std::to_string(p.max_rows));
  manifest.set_param("log_target", p.log_target ? "true" : "false");
  w.finish();
  for (const auto& rec : r.model.restarts) {
    if (!rec.ok) {
      err << "warning: restart " << rec.index << " skipped: " << rec.message << '\n';
    }
  }
  out << "GPR " << r.n_train << " train / " << r.n_test << " test, standardized RMSE "
      << text::format_double(r.rmse_standardized) << ", LML " << text::format_double(r.model.lml)
      << ", 3-sd coverage " << text::format_double(r.coverage_3sd) << '\n';
  return kExitOk;
}

int cmd_pipeline(const Options& o, bool seed_given, bool n_given, bool out_given,
                 std::ostream& out) {
  PipelineConfig cfg;
  if (!o.config.empty()) {
    const fs::path p(o.config);
    cfg = pipeline_config_from_keyed(KeyedText::read_file(p), p.parent_path());
  }
  if (seed_given) {
    cfg.seed = o.seed;
  }
  if (n_given) {
    cfg.n_total = o.n;
  }
  if (out_given) {
    cfg.output_dir = o.out_dir;
  }
  if (!o.input.empty()) {
    cfg.input = o.input;
  }
  const PipelineSummary s = run_pipeline(cfg, out);
  out << "manifest " << s.manifest.string() << '\n';
  return kExitOk;
}

}  // namespace

PipelineSummary run_pipeline(const PipelineConfig& cfg, std::ostream& log) {
  cfg.validate();
  RunManifest manifest("pipeline");
  const KeyedText params = pipeline_config_to_keyed(cfg);
  for (const auto& [k, v] : params.entries()) {
    manifest.set_param(k, v);
  }
  manifest.set_seed("root", cfg.seed);
  ArtifactWriter w(cfg.output_dir, manifest);
  PipelineSummary summary;

  FlightDataset flights;
  if (cfg.input) {
    manifest.add_input(*cfg.input);
    std::vector<std::string> warnings;
    flights = load_flights(*cfg.input, &warnings);
    print_warnings(warnings, log);
  } else {
    synth::SynthConfig sc = synth::default_table1_config(cfg.n_total, 0);
    if (cfg.synth_config) {
      manifest.add_input(*cfg.synth_config);
      sc = synth::config_from_keyed(KeyedText::read_file(*cfg.synth_config), sc);
      sc.n_total = cfg.n_total;
    }
    sc.seed = derive_seed(cfg.seed, "synth");
    manifest.set_seed("synth", sc.seed);
    flights = synth::generate(sc);
    w.write("flights.csv", flight_csv_string(flights));
    w.write("synth_config.txt", synth::config_to_keyed(sc).to_string());
  }
  summary.flights = flights.size();
  const DisruptionReport rep = run_report_stage(flights, w);
  log << rep.to_text();

  TransformParams tp;
  tp.engineer.shifts = cfg.shifts;
  tp.engineer.seat_map = synth::default_table1_config(1).seat_map;
  if (cfg.seat_map) {
    manifest.add_input(*cfg.seat_map);
    tp.engineer.seat_map = read_seat_map(*cfg.seat_map);
  }
  tp.subset = cfg.subset;
  tp.scaler = cfg.dimred_scaler;
  tp.suffix = "_dimred";
  const TransformResult dim = run_transform_stage(flights, tp, w);
  tp.scaler = cfg.featsel_scaler;
  tp.suffix = "_featsel";
  const TransformResult sel = run_transform_stage(flights, tp, w);
  summary.subset_rows = static_cast<std::size_t>(sel.scaled.rows());
  log << "subset " << describe(cfg.subset) << ": " << summary.subset_rows << " rows, "
      << sel.scaled.cols() << " columns\n";
  print_warnings(sel.scaler.warnings, log);

  if (!dim.scaled.column_index(cfg.target)) {
    throw LookupError("target feature not found: '" + cfg.target + "'");
  }
  const FeatureMatrix dim_x = without_column(dim.scaled, cfg.target);
  const dimred::PcaModel pca = run_pca_stage(dim_x, cfg.pca_dims, w);
  log << "PCA explained variance:";
  for (Eigen::Index k = 0; k < pca.explained_variance_ratio.size(); ++k) {
    log << ' ' << text::format_double(100.0 * pca.explained_variance_ratio(k)) << '%';
  }
  log << '\n';

  TsneStageParams ts;
  ts.tsne.perplexity = cfg.tsne_perplexity;
  ts.tsne.n_iter = cfg.tsne_iters;
  ts.tsne.learning_rate = cfg.tsne_learning_rate;
  ts.tsne.early_exaggeration = cfg.tsne_early_exaggeration;
  ts.tsne.seed = derive_seed(cfg.seed, "tsne");
  ts.max_rows = cfg.tsne_max_rows;
  manifest.set_seed("tsne", ts.tsne.seed);
  const dimred::TsneResult tsne = run_tsne_stage(dim_x, ts, w);
  log << "t-SNE final KL " << text::format_double(tsne.final_kl()) << '\n';

  const std::uint64_t mir_seed = derive_seed(cfg.seed, "mir");
  manifest.set_seed("mir", mir_seed);
  const featsel::MirScores mir = run_mir_stage(sel.scaled, cfg.target, cfg.mir_k, mir_seed, w);
  print_warnings(mir.warnings, log);
  if (!mir.entries.empty()) {
    log << "top MI feature " << mir.entries.front().name << " ("
        << text::format_double(mir.entries.front().mi_nats) << " nats)\n";
  }

  GprStageParams gp;
  gp.target = cfg.target;
  gp.features = cfg.gpr_features;
  gp.split_fraction = cfg.split_fraction;
  gp.split_seed = derive_seed(cfg.seed, "split");
  gp.fit_seed = derive_seed(cfg.seed, "gpr");
  gp.restarts = cfg.gpr_restarts;
  gp.max_rows = cfg.gpr_max_rows;
  gp.log_target = cfg.gpr_log_target;
  gp.scaler = sel.scaler;
  manifest.set_seed("split", gp.split_seed);
  manifest.set_seed("gpr", gp.fit_seed);
  const GprStageResult g = run_gpr_stage(sel.scaled, gp, w);
  summary.gpr_rmse_standardized = g.rmse_standardized;
  log << "GPR standardized RMSE " << text::format_double(g.rmse_standardized) << '\n';

  summary.manifest = w.finish();
  return summary;
}

int run_subcommand(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Airline irregular-operations exploratory analysis toolkit", "irops"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(version()));
  Options o;

  const auto add_out = [&](CLI::App* s) {
    s->add_option("-o,--out-dir", o.out_dir, "Directory for artifacts and the run manifest");
  };
  const auto add_input = [&](CLI::App* s, const std::string& what) {
    s->add_option("-i,--input", o.input, what)->required();
  };

  auto* synth = app.add_subcommand("synth", "Generate a synthetic flight-schedule CSV");
  auto* synth_n = synth->add_option("--n", o.n, "Number of flights")->capture_default_str();
  auto* synth_seed = synth->add_option("--seed", o.synth_seed, "Generator seed")->capture_default_str();
  synth->add_option("--config", o.config, "Keyed synth config file (flags win)");
  add_out(synth);

  auto* report = app.add_subcommand("report", "Disruption counts per functional domain");
  add_input(report, "Flight CSV");
  add_out(report);

  auto* transform = app.add_subcommand("transform", "Engineer and scale features");
  add_input(transform, "Flight CSV");
  transform->add_option("--scaler", o.scaler, "standard | range | power")
      ->check(CLI::IsMember({"standard", "range", "power"}));
  transform->add_option("--shifts", o.shifts, "Shift start minutes, comma separated");
  transform->add_option("--shift-length", o.shift_length, "Shift length in minutes");
  transform->add_option("--seat-map", o.seat_map, "Keyed file of aircraft code = seats");
  transform->add_option("--domain", o.domain, "Functional domain filter or 'all'");
  transform->add_option("--effect", o.effect, "Disruption effect filter or 'all'");
  add_out(transform);

  auto* pca = app.add_subcommand("pca", "Principal component embedding");
  add_input(pca, "Feature CSV");
  pca->add_option("--dims", o.dims, "Number of components");
  pca->add_option("--target", o.target, "Column left out of the embedding");
  add_out(pca);

  auto* tsne = app.add_subcommand("tsne", "Exact t-SNE embedding");
  add_input(tsne, "Feature CSV");
  tsne->add_option("--perplexity", o.perplexity, "Perplexity");
  tsne->add_option("--iters", o.iters, "Gradient iterations");
  tsne->add_option("--learning-rate", o.learning_rate, "Learning rate");
  tsne->add_option("--seed", o.seed, "Root seed");
  tsne->add_option("--max-rows", o.max_rows, "Subsample larger inputs to this many rows");
  tsne->add_option("--target", o.target, "Column left out of the embedding");
  add_out(tsne);

  auto* mir = app.add_subcommand("mir", "Mutual-information feature ranking");
  add_input(mir, "Feature CSV");
  mir->add_option("--k-neighbors", o.k_neighbors, "KSG neighbour count");
  mir->add_option("--target", o.target, "Target column");
  mir->add_option("--seed", o.seed, "Root seed");
  add_out(mir);

  auto* gpr = app.add_subcommand("gpr", "Gaussian-process regression with ARD Matern-3/2");
  add_input(gpr, "Feature CSV");
  gpr->add_option("--restarts", o.restarts, "Optimizer restarts");
  gpr->add_option("--split", o.split, "Training fraction");
  gpr->add_option("--seed", o.seed, "Root seed");
  gpr->add_option("--target", o.target, "Target column");
  gpr->add_option("--features", o.features, "Input columns, comma separated");
  gpr->add_option("--max-rows", o.max_rows, "Rows kept before the split (default 700)");
  gpr->add_flag("--log-target", o.log_target, "Fit the log of the target");
  gpr->add_option("--scaler-params", o.scaler_params,
                  "Scaler file of the feature CSV, used to recover target units");
  add_out(gpr);

  auto* pipeline = app.add_subcommand("pipeline", "Run every stage from one config");
  pipeline->add_option("--config", o.config, "Keyed pipeline config file");
  auto* pipe_seed = pipeline->add_option("--seed", o.seed, "Root seed (overrides config)");
  auto* pipe_n = pipeline->add_option("--n", o.n, "Synthetic flights (overrides config)");
  auto* pipe_out = pipeline->add_option("-o,--out-dir", o.out_dir, "Output directory");
  pipeline->add_option("-i,--input", o.input, "Flight CSV instead of synthetic data");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsageError;
  }
  const std::string name = app.get_subcommands().front()->get_name();
  try {
    if (name == "synth") {
      return cmd_synth(o, synth_n->count() > 0, synth_seed->count() > 0, out);
    }
    if (name == "report") {
      return cmd_report(o, out, err);
    }
    if (name == "transform") {
      return cmd_transform(o, out, err);
    }
    if (name == "pca") {
      return cmd_pca(o, out);
    }
    if (name == "tsne") {
      return cmd_tsne(o, out);
    }
    if (name == "mir") {
      return cmd_mir(o, out, err);
    }
    if (name == "gpr") {
      return cmd_gpr(o, out, err);
    }
    return cmd_pipeline(o, pipe_seed->count() > 0, pipe_n->count() > 0, pipe_out->count() > 0,
                        out);
  } catch (const UsageError& e) {
    err << "irops " << name << ": " << e.what() << '\n';
    return kExitUsageError;
  } catch (const Error& e) {
    err << "irops " << name << ": " << e.what() << '\n';
    return kExitDomainError;
  } catch (const std::exception& e) {
    err << "irops " << name << ": " << e.what() << '\n';
    return kExitDomainError;
  }
}

int run_subcommand(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) {
    args.emplace_back(argv[i]);
  }
  return run_subcommand(args, std::cout, std::cerr);
}

}  // namespace irops::cli
