#include "irops/features/scaler.hpp"

#include <cmath>

#include "irops/core/error.hpp"
#include "irops/features/yeo_johnson.hpp"

namespace irops::features {

namespace {

void population_moments(const Eigen::VectorXd& v, double& mean, double& sd) {
  mean = v.mean();
  sd = std::sqrt((v.array() - mean).square().mean());
}

void check_columns(const ScalerModel& model, const FeatureMatrix& x) {
  if (static_cast<Eigen::Index>(model.columns.size()) != x.cols()) {
    throw DimensionError("scaler fitted on " + std::to_string(model.columns.size()) +
                         " columns, matrix has " + std::to_string(x.cols()));
  }
  for (std::size_t j = 0; j < model.columns.size(); ++j) {
    if (model.columns[j].name != x.descriptors[j].name) {
      throw DimensionError("scaler column " + std::to_string(j) + " is '" +
                           model.columns[j].name + "', matrix has '" + x.descriptors[j].name + "'");
    }
  }
}

}  // namespace

std::string_view to_string(ScalerMethod m) noexcept {
  switch (m) {
    case ScalerMethod::Standard: return "standard";
    case ScalerMethod::Range: return "range";
    case ScalerMethod::Power: return "power";
  }
  return "standard";
}

ScalerMethod parse_scaler_method(std::string_view s) {
  if (s == "standard") return ScalerMethod::Standard;
  if (s == "range") return ScalerMethod::Range;
  if (s == "power") return ScalerMethod::Power;
  throw DomainError("unknown scaler method '" + std::string(s) + "' (standard|range|power)");
}

ScalerModel fit_scaler(const FeatureMatrix& x, ScalerMethod method) {
  const Eigen::Index min_rows = method == ScalerMethod::Power ? 3 : 2;
  if (x.rows() < min_rows) {
    throw DomainError("scaler fit needs at least " + std::to_string(min_rows) + " rows");
  }
  ScalerModel model;
  model.method = method;
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    const Eigen::VectorXd col = x.values.col(j);
    ColumnScaling c;
    c.name = x.descriptors[static_cast<std::size_t>(j)].name;
    c.min = col.minCoeff();
    c.max = col.maxCoeff();
    c.constant = c.min == c.max;
    if (c.constant) {
      c.mean = c.min;
      c.sd = 1.0;
      model.warnings.push_back("column '" + c.name + "' is constant; passed through as zeros");
      model.columns.push_back(c);
      continue;
    }
    switch (method) {
      case ScalerMethod::Standard:
        population_moments(col, c.mean, c.sd);
        break;
      case ScalerMethod::Range:
        break;
      case ScalerMethod::Power: {
        c.lambda = fit_yeo_johnson_lambda(std::span<const double>(col.data(), col.size()));
        Eigen::VectorXd t = col.unaryExpr([&](double v) { return yeo_johnson(v, c.lambda); });
        population_moments(t, c.mean, c.sd);
        if (!(c.sd > 0.0)) {
          c.constant = true;
          c.mean = c.min;
          c.sd = 1.0;
          model.warnings.push_back("column '" + c.name +
                                   "' is constant after power transform; passed through as zeros");
        }
        break;
      }
    }
    model.columns.push_back(c);
  }
  return model;
}

FeatureMatrix apply_scaler(const ScalerModel& model, const FeatureMatrix& x) {
  check_columns(model, x);
  FeatureMatrix out = x;
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    const auto& c = model.columns[static_cast<std::size_t>(j)];
    auto col = out.values.col(j);
    if (c.constant) {
      col.setZero();
      continue;
    }
    switch (model.method) {
      case ScalerMethod::Standard:
        col = (col.array() - c.mean) / c.sd;
        break;
      case ScalerMethod::Range:
        col = (col.array() - c.min) / (c.max - c.min);
        break;
      case ScalerMethod::Power:
        col = col.unaryExpr([&](double v) { return (yeo_johnson(v, c.lambda) - c.mean) / c.sd; });
        break;
    }
  }
  return out;
}

FeatureMatrix inverse_scaler(const ScalerModel& model, const FeatureMatrix& scaled) {
  check_columns(model, scaled);
  FeatureMatrix out = scaled;
  for (Eigen::Index j = 0; j < scaled.cols(); ++j) {
    const auto& c = model.columns[static_cast<std::size_t>(j)];
    auto col = out.values.col(j);
    if (c.constant) {
      col.setConstant(c.mean);
      continue;
    }
    switch (model.method) {
      case ScalerMethod::Standard:
        col = col.array() * c.sd + c.mean;
        break;
      case ScalerMethod::Range:
        col = col.array() * (c.max - c.min) + c.min;
        break;
      case ScalerMethod::Power:
        col = col.unaryExpr(
            [&](double z) { return yeo_johnson_inverse(z * c.sd + c.mean, c.lambda); });
        break;
    }
  }
  return out;
}

KeyedText scaler_to_keyed(const ScalerModel& model) {
  KeyedText doc;
  doc.set("method", std::string(to_string(model.method)));
  doc.set("columns", static_cast<std::int64_t>(model.columns.size()));
  for (std::size_t j = 0; j < model.columns.size(); ++j) {
    const auto& c = model.columns[j];
    const std::string p = "column." + std::to_string(j) + ".";
    doc.set(p + "name", c.name);
    doc.set(p + "constant", c.constant);
    doc.set(p + "mean", c.mean);
    doc.set(p + "sd", c.sd);
    doc.set(p + "min", c.min);
    doc.set(p + "max", c.max);
    doc.set(p + "lambda", c.lambda);
  }
  for (std::size_t w = 0; w < model.warnings.size(); ++w) {
    doc.set("warning." + std::to_string(w), model.warnings[w]);
  }
  return doc;
}

ScalerModel scaler_from_keyed(const KeyedText& doc) {
  ScalerModel model;
  try {
    model.method = parse_scaler_method(doc.get_string("method"));
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  const auto n = doc.get_int("columns");
  if (n < 0) {
    throw ConfigError("negative column count");
  }
  for (std::int64_t j = 0; j < n; ++j) {
    const std::string p = "column." + std::to_string(j) + ".";
    ColumnScaling c;
    c.name = doc.get_string(p + "name");
    c.constant = doc.get_bool(p + "constant");
    c.mean = doc.get_double(p + "mean");
    c.sd = doc.get_double(p + "sd");
    c.min = doc.get_double(p + "min");
    c.max = doc.get_double(p + "max");
    c.lambda = doc.get_double(p + "lambda");
    model.columns.push_back(std::move(c));
  }
  for (const auto& [k, v] : doc.with_prefix("warning.")) {
    model.warnings.push_back(v);
  }
  return model;
}

}  // namespace irops::features
