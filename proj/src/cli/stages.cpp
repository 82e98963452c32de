#include "irops/cli/stages.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "irops/cli/split.hpp"
#include "irops/core/error.hpp"
#include "irops/core/rng.hpp"
#include "irops/core/text.hpp"
#include "irops/featsel/qq.hpp"
#include "irops/flight_data/flight_csv.hpp"

namespace irops::cli {

namespace {

using text::csv_field;
using text::format_double;

std::string label_of(const FeatureMatrix& x, Eigen::Index i) {
  return x.labels.empty() ? std::string() : x.labels[static_cast<std::size_t>(i)];
}

// Seeded choice of `keep` rows out of n, returned in ascending order.
std::vector<std::size_t> subsample(std::size_t n, std::size_t keep, std::uint64_t seed) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  if (keep >= n) {
    return idx;
  }
  Rng rng(seed);
  for (std::size_t i = 0; i < keep; ++i) {
    std::swap(idx[i], idx[i + rng.index(n - i)]);
  }
  idx.resize(keep);
  std::sort(idx.begin(), idx.end());
  return idx;
}

std::string class_of(const FeatureMatrix& x, const std::string& name) {
  const auto j = x.require_column(name);
  return std::string(display_name(x.descriptors[static_cast<std::size_t>(j)].abstraction_class));
}

Eigen::VectorXd original_units(const features::ScalerModel& scaler, const std::string& name,
                               const Eigen::VectorXd& v) {
  const auto it = std::find_if(scaler.columns.begin(), scaler.columns.end(),
                               [&](const features::ColumnScaling& c) { return c.name == name; });
  if (it == scaler.columns.end()) {
    throw LookupError("scaler has no column '" + name + "'");
  }
  features::ScalerModel one{scaler.method, {*it}, {}};
  FeatureMatrix m;
  m.values = v;
  m.descriptors = {FeatureDescriptor{name, AbstractionClass::Epistemic, FeatureCategory::Continuous,
                                     std::nullopt}};
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    m.row_ids.push_back(std::to_string(i));
  }
  return features::inverse_scaler(one, m).values.col(0);
}

}  // namespace

std::optional<FunctionalDomain> parse_domain_filter(const std::string& s) {
  if (s.empty() || s == "all") {
    return std::nullopt;
  }
  return parse_domain(s);
}

std::optional<DisruptionEffect> parse_effect_filter(const std::string& s) {
  if (s.empty() || s == "all") {
    return std::nullopt;
  }
  return parse_effect(s);
}

std::string describe(const SubsetFilter& f) {
  return std::string(f.domain ? to_string(*f.domain) : "all") + "/" +
         std::string(f.effect ? to_string(*f.effect) : "all");
}

FlightDataset apply_filter(const FlightDataset& dataset, const SubsetFilter& filter) {
  FlightDataset out;
  for (const auto& r : dataset) {
    if (filter.domain && r.functional_domain != filter.domain) {
      continue;
    }
    if (filter.effect && r.disruption_effect != *filter.effect) {
      continue;
    }
    out.push_back(r);
  }
  return out;
}

FlightDataset load_flights(const std::filesystem::path& path, std::vector<std::string>* warnings) {
  FlightParseResult parsed = parse_flight_csv(path);
  if (warnings != nullptr) {
    for (const auto& e : parsed.errors) {
      warnings->push_back(path.string() + ":" + std::to_string(e.line) + ": " + e.message);
    }
  }
  return std::move(parsed.records);
}

DisruptionReport run_report_stage(const FlightDataset& dataset, ArtifactWriter& out) {
  DisruptionReport rep = macroscopic_report(dataset);
  out.write("report.csv", rep.to_csv());
  out.write("report.txt", rep.to_text());
  return rep;
}

TransformResult run_transform_stage(const FlightDataset& dataset, const TransformParams& params,
                                    ArtifactWriter& out) {
  const FlightDataset subset = apply_filter(dataset, params.subset);
  if (subset.empty()) {
    throw EmptyInputError("no flights match subset " + describe(params.subset));
  }
  features::EngineeredFeatures eng = features::engineer_features(subset, params.engineer);
  TransformResult r;
  r.excluded = eng.excluded_cancelled_or_diverted;
  r.raw = std::move(eng.matrix);
  r.scaler = features::fit_scaler(r.raw, params.scaler);
  r.scaled = features::apply_scaler(r.scaler, r.raw);

  const std::string stem = "features" + params.suffix;
  std::ostringstream fcsv;
  write_feature_csv(fcsv, r.scaled);
  out.write(stem + ".csv", fcsv.str());
  std::ostringstream dcsv;
  write_descriptor_csv(dcsv, r.scaled.descriptors);
  out.write(stem + ".descriptors.csv", dcsv.str());
  out.write("scaler" + params.suffix + ".txt", features::scaler_to_keyed(r.scaler).to_string());
  return r;
}

FeatureMatrix without_column(const FeatureMatrix& x, const std::string& target) {
  return x.column_index(target) ? x.drop_column(target) : x;
}

dimred::PcaModel run_pca_stage(const FeatureMatrix& x, int dims, ArtifactWriter& out) {
  const dimred::PcaModel model = dimred::pca_fit(x.values, dims);
  const Eigen::MatrixXd y = dimred::pca_transform(model, x.values);

  std::ostringstream emb;
  emb << "row_id";
  for (int k = 0; k < dims; ++k) {
    emb << ",dim" << (k + 1);
  }
  emb << ",label\n";
  for (Eigen::Index i = 0; i < y.rows(); ++i) {
    emb << csv_field(x.row_ids[static_cast<std::size_t>(i)]);
    for (int k = 0; k < dims; ++k) {
      emb << ',' << format_double(y(i, k));
    }
    emb << ',' << csv_field(label_of(x, i)) << '\n';
  }
  out.write("pca_embedding.csv", emb.str());

  std::ostringstream spec;
  spec << "component,eigenvalue,explained_variance_ratio,cumulative_ratio\n";
  double cum = 0.0;
  for (int k = 0; k < dims; ++k) {
    cum += model.explained_variance_ratio(k);
    spec << (k + 1) << ',' << format_double(model.eigenvalues(k)) << ','
         << format_double(model.explained_variance_ratio(k)) << ',' << format_double(cum) << '\n';
  }
  out.write("pca_spectrum.csv", spec.str());

  std::ostringstream comp;
  comp << "component";
  for (const auto& d : x.descriptors) {
    comp << ',' << csv_field(d.name);
  }
  comp << '\n';
  for (int k = 0; k < dims; ++k) {
    comp << (k + 1);
    for (Eigen::Index j = 0; j < model.components.cols(); ++j) {
      comp << ',' << format_double(model.components(k, j));
    }
    comp << '\n';
  }
  out.write("pca_components.csv", comp.str());
  return model;
}

dimred::TsneResult run_tsne_stage(const FeatureMatrix& x, const TsneStageParams& params,
                                  ArtifactWriter& out) {
  const auto rows = subsample(static_cast<std::size_t>(x.rows()), params.max_rows,
                              derive_seed(params.tsne.seed, "rows"));
  const FeatureMatrix sub = x.select_rows(rows);
  const dimred::TsneResult res = dimred::tsne_embed(sub.values, params.tsne);

  std::ostringstream emb;
  emb << "row_id,dim1,dim2,label\n";
  for (Eigen::Index i = 0; i < res.embedding.rows(); ++i) {
    emb << csv_field(sub.row_ids[static_cast<std::size_t>(i)]) << ','
        << format_double(res.embedding(i, 0)) << ',' << format_double(res.embedding(i, 1)) << ','
        << csv_field(label_of(sub, i)) << '\n';
  }
  out.write("tsne_embedding.csv", emb.str());

  std::ostringstream kl;
  kl << "iteration,kl,exaggerated\n";
  for (const auto& s : res.kl_trace) {
    kl << s.iteration << ',' << format_double(s.kl) << ','
       << (s.iteration < params.tsne.exaggeration_iters ? 1 : 0) << '\n';
  }
  out.write("tsne_kl_trace.csv", kl.str());
  return res;
}

featsel::MirScores run_mir_stage(const FeatureMatrix& x, const std::string& target, int k,
                                 std::uint64_t seed, ArtifactWriter& out) {
  if (!x.column_index(target)) {
    throw LookupError("target feature not found: '" + target + "'");
  }
  const featsel::MirScores scores = featsel::mir_rank(x, target, k, seed);
  std::ostringstream csv;
  csv << "rank,feature_name,feature_class,mi_nats\n";
  for (std::size_t i = 0; i < scores.entries.size(); ++i) {
    const auto& e = scores.entries[i];
    csv << (i + 1) << ',' << csv_field(e.name) << ',' << csv_field(class_of(x, e.name)) << ','
        << format_double(e.mi_nats) << '\n';
  }
  out.write("mir_scores.csv", csv.str());
  return scores;
}

GprStageResult run_gpr_stage(const FeatureMatrix& x_all, const GprStageParams& params,
                             ArtifactWriter& out) {
  const auto target_col = x_all.column_index(params.target);
  if (!target_col) {
    throw LookupError("target feature not found: '" + params.target + "'");
  }
  GprStageResult r;
  if (!params.features.empty()) {
    r.features = params.features;
    for (const auto& f : r.features) {
      if (f == params.target) {
        throw DomainError("target '" + f + "' listed among the GPR input features");
      }
      static_cast<void>(x_all.require_column(f));
    }
  } else {
    for (const auto& f : turnaround_regression_features()) {
      if (x_all.column_index(f)) {
        r.features.push_back(f);
      }
    }
    if (r.features.empty()) {
      for (const auto& f : x_all.column_names()) {
        if (f != params.target) {
          r.features.push_back(f);
        }
      }
    }
  }
  if (r.features.empty()) {
    throw EmptyInputError("no GPR input features");
  }

  const auto keep = subsample(static_cast<std::size_t>(x_all.rows()), params.max_rows,
                              derive_seed(params.split_seed, "rows"));
  const FeatureMatrix x = x_all.select_rows(keep);
  const SplitIndices split = split_indices(keep.size(), params.split_fraction, params.split_seed);
  const FeatureMatrix train = x.select_rows(split.train);
  const FeatureMatrix test = x.select_rows(split.test);
  r.n_train = split.train.size();
  r.n_test = split.test.size();

  const auto target_values = [&](const FeatureMatrix& m) {
    Eigen::VectorXd y = m.values.col(m.require_column(params.target));
    if (params.scaler) {
      y = original_units(*params.scaler, params.target, y);
    }
    if (params.log_target) {
      if ((y.array() <= 0.0).any()) {
        throw DomainError("log target needs strictly positive values");
      }
      y = y.array().log().matrix();
    }
    return y;
  };
  const Eigen::VectorXd y_train_raw = target_values(train);
  const Eigen::VectorXd y_test_raw = target_values(test);
  const double mu = y_train_raw.mean();
  const double sd = std::sqrt((y_train_raw.array() - mu).square().sum() /
                              static_cast<double>(y_train_raw.size()));
  if (!(sd > 0.0)) {
    throw DomainError("target is constant on the training split");
  }
  const Eigen::VectorXd y_train = (y_train_raw.array() - mu) / sd;
  const Eigen::VectorXd y_test = (y_test_raw.array() - mu) / sd;

  featsel::GprFitOptions opt;
  opt.restarts = params.restarts;
  opt.seed = params.fit_seed;
  r.model = featsel::gpr_fit(train.select_columns(r.features).values, y_train, opt);
  const featsel::GprPrediction pred =
      featsel::gpr_predict(r.model, test.select_columns(r.features).values);

  const double noise = r.model.hp.noise_variance;
  const auto n_test = static_cast<double>(r.n_test);
  double se_std = 0.0;
  double se_raw = 0.0;
  std::size_t covered = 0;
  std::ostringstream pcsv;
  pcsv << "row_id,label,observed,predicted,observed_std,predicted_std,predictive_sd_std\n";
  for (Eigen::Index i = 0; i < y_test.size(); ++i) {
    const double s = std::sqrt(pred.variance(i) + noise);
    const double err = y_test(i) - pred.mean(i);
    se_std += err * err;
    covered += std::fabs(err) <= 3.0 * s ? 1U : 0U;
    double obs = y_test_raw(i);
    double pre = mu + sd * pred.mean(i);
    if (params.log_target) {
      obs = std::exp(obs);
      pre = std::exp(pre);
    }
    se_raw += (obs - pre) * (obs - pre);
    pcsv << csv_field(test.row_ids[static_cast<std::size_t>(i)]) << ','
         << csv_field(label_of(test, i)) << ',' << format_double(obs) << ','
         << format_double(pre) << ',' << format_double(y_test(i)) << ','
         << format_double(pred.mean(i)) << ',' << format_double(s) << '\n';
  }
  out.write("gpr_predictions.csv", pcsv.str());
  r.rmse_standardized = std::sqrt(se_std / n_test);
  r.rmse = std::sqrt(se_raw / n_test);
  r.coverage_3sd = static_cast<double>(covered) / n_test;

  const std::vector<double> m(pred.mean.data(), pred.mean.data() + pred.mean.size());
  const std::vector<double> v(pred.variance.data(), pred.variance.data() + pred.variance.size());
  const std::vector<double> yt(y_test.data(), y_test.data() + y_test.size());
  const auto qq = featsel::sme_qq(m, v, yt, noise);
  r.qq_max_gap = featsel::qq_max_gap(qq);
  r.qq_central_gap = featsel::qq_max_gap(qq, 0.05, 0.95);

  std::vector<std::size_t> order(r.features.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return r.model.hp.lengthscales(static_cast<Eigen::Index>(a)) <
           r.model.hp.lengthscales(static_cast<Eigen::Index>(b));
  });
  std::ostringstream lcsv;
  lcsv << "lengthscale,feature_class,feature_name\n";
  for (const std::size_t j : order) {
    lcsv << format_double(r.model.hp.lengthscales(static_cast<Eigen::Index>(j))) << ','
         << csv_field(class_of(x, r.features[j])) << ',' << csv_field(r.features[j]) << '\n';
  }
  out.write("gpr_lengthscales.csv", lcsv.str());

  std::ostringstream qcsv;
  qcsv << "position,theoretical,observed\n";
  for (const auto& q : qq) {
    qcsv << format_double(q.position) << ',' << format_double(q.theoretical) << ','
         << format_double(q.observed) << '\n';
  }
  out.write("gpr_qq.csv", qcsv.str());

  KeyedText summary;
  summary.set("target", params.target);
  summary.set("log_target", params.log_target);
  summary.set("n_train", static_cast<std::uint64_t>(r.n_train));
  summary.set("n_test", static_cast<std::uint64_t>(r.n_test));
  summary.set("split_fraction", params.split_fraction);
  summary.set("split_seed", params.split_seed);
  summary.set("fit_seed", params.fit_seed);
  summary.set("restarts", params.restarts);
  summary.set("best_restart", r.model.best_restart);
  summary.set("lml", r.model.lml);
  summary.set("rmse_standardized", r.rmse_standardized);
  summary.set("rmse", r.rmse);
  summary.set("coverage_3sd", r.coverage_3sd);
  summary.set("qq_max_gap", r.qq_max_gap);
  summary.set("qq_central_gap", r.qq_central_gap);
  summary.set("signal_variance", r.model.hp.signal_variance);
  summary.set("noise_variance", noise);
  summary.set("jitter", r.model.jitter);
  summary.set("target_mean", mu);
  summary.set("target_sd", sd);
  for (const auto& rec : r.model.restarts) {
    const std::string k = "restart." + std::to_string(rec.index);
    summary.set(k + ".ok", rec.ok);
    summary.set(k + ".lml", rec.lml);
    summary.set(k + ".iterations", rec.iterations);
    summary.set(k + ".message", rec.message);
  }
  for (std::size_t i = 0; i < pred.warnings.size(); ++i) {
    summary.set("warning." + std::to_string(i), pred.warnings[i]);
  }
  out.write("gpr_summary.txt", summary.to_string());
  return r;
}

}  // namespace irops::cli
