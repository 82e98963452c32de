#include "irops/cli/pipeline_config.hpp"

#include "irops/core/error.hpp"
#include "irops/core/text.hpp"

namespace irops::cli {

namespace fs = std::filesystem;

namespace {

fs::path resolve(const fs::path& base, const std::string& value) {
  const fs::path p(value);
  return p.is_absolute() || base.empty() ? p : base / p;
}

}  // namespace

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  for (const auto& part : text::split_csv_line(s)) {
    std::int64_t v = 0;
    if (!text::parse_int(text::trim(part), v)) {
      throw ConfigError("not an integer list: '" + s + "'");
    }
    out.push_back(static_cast<int>(v));
  }
  return out;
}

std::vector<std::string> parse_name_list(const std::string& s) {
  std::vector<std::string> out;
  for (const auto& part : text::split_csv_line(s)) {
    const auto t = text::trim(part);
    if (!t.empty()) {
      out.emplace_back(t);
    }
  }
  return out;
}

std::map<std::string, int> read_seat_map(const fs::path& path) {
  const KeyedText doc = KeyedText::read_file(path);
  std::map<std::string, int> m;
  for (const auto& [k, v] : doc.entries()) {
    std::int64_t seats = 0;
    if (!text::parse_int(v, seats) || seats <= 0) {
      throw ConfigError("seat map entry '" + k + "' needs a positive integer");
    }
    m[k] = static_cast<int>(seats);
  }
  if (m.empty()) {
    throw ConfigError("seat map " + path.string() + " is empty");
  }
  return m;
}

void PipelineConfig::validate() const {
  if (!(split_fraction > 0.0 && split_fraction < 1.0)) {
    throw ConfigError("split.fraction must lie in (0, 1)");
  }
  if (target.empty()) {
    throw ConfigError("target must be named");
  }
  if (!input && n_total == 0) {
    throw ConfigError("synth.n_total must be positive");
  }
  if (pca_dims < 1) {
    throw ConfigError("pca.dims must be at least 1");
  }
  if (tsne_iters < 1 || tsne_max_rows < 10 || !(tsne_learning_rate > 0.0)) {
    throw ConfigError("t-SNE needs iters >= 1, max_rows >= 10 and learning_rate > 0");
  }
  if (mir_k < 1) {
    throw ConfigError("mir.k_neighbors must be at least 1");
  }
  if (gpr_restarts < 1 || gpr_max_rows < 10) {
    throw ConfigError("gpr needs restarts >= 1 and max_rows >= 10");
  }
  features::validate(shifts);
}

PipelineConfig pipeline_config_from_keyed(const KeyedText& doc, const fs::path& base_dir) {
  PipelineConfig c;
  c.seed = doc.get_uint("seed", c.seed);
  if (const auto v = doc.find("input")) {
    c.input = resolve(base_dir, *v);
  }
  if (const auto v = doc.find("synth.config")) {
    c.synth_config = resolve(base_dir, *v);
  }
  c.n_total = doc.get_uint("synth.n_total", c.n_total);
  if (const auto v = doc.find("output_dir")) {
    c.output_dir = resolve(base_dir, *v);
  }
  c.target = doc.get_string("target", c.target);
  try {
    if (const auto v = doc.find("subset.domain")) {
      c.subset.domain = parse_domain_filter(*v);
    }
    if (const auto v = doc.find("subset.effect")) {
      c.subset.effect = parse_effect_filter(*v);
    }
    if (const auto v = doc.find("dimred.scaler")) {
      c.dimred_scaler = features::parse_scaler_method(*v);
    }
    if (const auto v = doc.find("featsel.scaler")) {
      c.featsel_scaler = features::parse_scaler_method(*v);
    }
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  if (const auto v = doc.find("shifts.starts")) {
    c.shifts.starts = parse_int_list(*v);
  }
  c.shifts.length = static_cast<int>(doc.get_int("shifts.length", c.shifts.length));
  if (const auto v = doc.find("seat_map")) {
    c.seat_map = resolve(base_dir, *v);
  }
  c.pca_dims = static_cast<int>(doc.get_int("pca.dims", c.pca_dims));
  c.tsne_perplexity = doc.get_double("tsne.perplexity", c.tsne_perplexity);
  c.tsne_iters = static_cast<int>(doc.get_int("tsne.iters", c.tsne_iters));
  c.tsne_learning_rate = doc.get_double("tsne.learning_rate", c.tsne_learning_rate);
  c.tsne_early_exaggeration = doc.get_double("tsne.early_exaggeration", c.tsne_early_exaggeration);
  c.tsne_max_rows = doc.get_uint("tsne.max_rows", c.tsne_max_rows);
  c.mir_k = static_cast<int>(doc.get_int("mir.k_neighbors", c.mir_k));
  c.gpr_restarts = static_cast<int>(doc.get_int("gpr.restarts", c.gpr_restarts));
  c.gpr_max_rows = doc.get_uint("gpr.max_rows", c.gpr_max_rows);
  c.gpr_log_target = doc.get_bool("gpr.log_target", c.gpr_log_target);
  if (const auto v = doc.find("gpr.features")) {
    c.gpr_features = parse_name_list(*v);
  }
  c.split_fraction = doc.get_double("split.fraction", c.split_fraction);
  c.validate();
  return c;
}

KeyedText pipeline_config_to_keyed(const PipelineConfig& c) {
  KeyedText doc;
  doc.set("seed", c.seed);
  if (c.input) {
    doc.set("input", c.input->generic_string());
  }
  if (c.synth_config) {
    doc.set("synth.config", c.synth_config->generic_string());
  }
  doc.set("synth.n_total", c.n_total);
  doc.set("target", c.target);
  doc.set("subset.domain",
          c.subset.domain ? std::string(to_string(*c.subset.domain)) : std::string("all"));
  doc.set("subset.effect",
          c.subset.effect ? std::string(to_string(*c.subset.effect)) : std::string("all"));
  doc.set("dimred.scaler", std::string(features::to_string(c.dimred_scaler)));
  doc.set("featsel.scaler", std::string(features::to_string(c.featsel_scaler)));
  std::vector<std::string> starts;
  for (const int s : c.shifts.starts) {
    starts.push_back(std::to_string(s));
  }
  doc.set("shifts.starts", text::join(starts, ","));
  doc.set("shifts.length", c.shifts.length);
  if (c.seat_map) {
    doc.set("seat_map", c.seat_map->generic_string());
  }
  doc.set("pca.dims", c.pca_dims);
  doc.set("tsne.perplexity", c.tsne_perplexity);
  doc.set("tsne.iters", c.tsne_iters);
  doc.set("tsne.learning_rate", c.tsne_learning_rate);
  doc.set("tsne.early_exaggeration", c.tsne_early_exaggeration);
  doc.set("tsne.max_rows", static_cast<std::uint64_t>(c.tsne_max_rows));
  doc.set("mir.k_neighbors", c.mir_k);
  doc.set("gpr.restarts", c.gpr_restarts);
  doc.set("gpr.max_rows", static_cast<std::uint64_t>(c.gpr_max_rows));
  doc.set("gpr.log_target", c.gpr_log_target);
  doc.set("gpr.features", text::join(c.gpr_features, ","));
  doc.set("split.fraction", c.split_fraction);
  return doc;
}

}  // namespace irops::cli
