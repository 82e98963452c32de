#pragma once

// Shared data sets for the feature-selection tests and the acceptance run.

#include <Eigen/Dense>

#include <cmath>

#include "irops/core/rng.hpp"
#include "irops/features/engineer.hpp"
#include "irops/features/scaler.hpp"
#include "irops/featsel/gpr.hpp"
#include "irops/featsel/qq.hpp"
#include "irops/flight_data/disruption_report.hpp"
#include "irops/synth/synth.hpp"

namespace fixtures {

struct WeatherDelayed {
  irops::FeatureMatrix raw;
  irops::FeatureMatrix standardized;
};

/// Weather-domain delayed flights from an 80,000-flight synthetic schedule.
inline const WeatherDelayed& weather_delayed() {
  static const WeatherDelayed data = [] {
    const auto cfg = irops::synth::default_table1_config(80000, 42);
    const auto sub = irops::filter_subset(irops::synth::generate(cfg), irops::FunctionalDomain::Weather,
                                          irops::DisruptionEffect::Delayed);
    irops::features::EngineerOptions o;
    o.seat_map = cfg.seat_map;
    WeatherDelayed w;
    w.raw = irops::features::engineer_features(sub, o).matrix;
    w.standardized = irops::features::apply_scaler(
        irops::features::fit_scaler(w.raw, irops::features::ScalerMethod::Standard), w.raw);
    return w;
  }();
  return data;
}

struct LmlToy {
  Eigen::MatrixXd x;
  Eigen::VectorXd y;
  irops::featsel::GprHyperparameters hp;
};

inline const LmlToy& lml_toy() {
  static const LmlToy toy = [] {
    irops::Rng r(25);
    LmlToy t;
    t.x.resize(25, 3);
    t.y.resize(25);
    for (Eigen::Index i = 0; i < 25; ++i) {
      for (Eigen::Index j = 0; j < 3; ++j) t.x(i, j) = r.uniform(-1.5, 1.5);
      t.y(i) = std::cos(t.x(i, 0)) + 0.3 * t.x(i, 1) + 0.1 * r.normal();
    }
    t.hp.lengthscales = Eigen::Vector3d(0.7, 1.9, 4.0);
    t.hp.signal_variance = 0.8;
    t.hp.noise_variance = 0.05;
    return t;
  }();
  return toy;
}

struct DensePosterior {
  Eigen::VectorXd mean;
  Eigen::VectorXd variance;
};

/// Posterior from an explicit inverse of K + noise I, kernel evaluated inline.
inline DensePosterior dense_posterior(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                                      const Eigen::MatrixXd& xs,
                                      const irops::featsel::GprHyperparameters& hp, double mu) {
  const auto k = [&](const Eigen::RowVectorXd& a, const Eigen::RowVectorXd& b) {
    double r2 = 0;
    for (Eigen::Index j = 0; j < a.size(); ++j) r2 += std::pow((a(j) - b(j)) / hp.lengthscales(j), 2);
    const double s = std::sqrt(3.0 * r2);
    return hp.signal_variance * (1 + s) * std::exp(-s);
  };
  const Eigen::Index n = x.rows();
  Eigen::MatrixXd kn(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) kn(i, j) = k(x.row(i), x.row(j)) + (i == j ? hp.noise_variance : 0.0);
  Eigen::MatrixXd ks(xs.rows(), n);
  for (Eigen::Index i = 0; i < xs.rows(); ++i)
    for (Eigen::Index j = 0; j < n; ++j) ks(i, j) = k(xs.row(i), x.row(j));
  const Eigen::MatrixXd inv = kn.inverse();
  DensePosterior d;
  d.mean = (ks * inv * (y.array() - mu).matrix()).array() + mu;
  d.variance.resize(xs.rows());
  for (Eigen::Index i = 0; i < xs.rows(); ++i) {
    d.variance(i) = k(xs.row(i), xs.row(i)) - (ks.row(i) * inv * ks.row(i).transpose())(0, 0);
  }
  return d;
}

struct QqScenario {
  std::vector<irops::featsel::QqPair> pairs;
  irops::featsel::GprModel model;
};

/// Fits a one-input GP on the first `ntr` points and forms QQ pairs on the rest.
inline QqScenario qq_scenario(const Eigen::MatrixXd& x, Eigen::VectorXd y, std::uint64_t seed,
                              Eigen::Index ntr, int restarts) {
  const Eigen::Index nte = x.rows() - ntr;
  const double mean = y.head(ntr).mean();
  const double sd = std::sqrt((y.head(ntr).array() - mean).square().mean());
  y = (y.array() - mean) / sd;
  irops::featsel::GprFitOptions o;
  o.seed = seed;
  o.restarts = restarts;
  QqScenario s;
  s.model = irops::featsel::gpr_fit(x.topRows(ntr), y.head(ntr), o);
  const auto p = irops::featsel::gpr_predict(s.model, x.bottomRows(nte));
  const Eigen::VectorXd yt = y.tail(nte);
  s.pairs = irops::featsel::sme_qq(std::span<const double>(p.mean.data(), nte),
                                   std::span<const double>(p.variance.data(), nte),
                                   std::span<const double>(yt.data(), nte), s.model.hp.noise_variance);
  return s;
}

/// Latent function drawn from a Matern-3/2 prior (l = 1, unit variance) plus
/// Gaussian noise of variance 0.1: the model family is exactly right. 1,000
/// training points keep the shared posterior error of the latent function
/// small next to the noise, so the held-out errors are close to i.i.d.
inline const QqScenario& qq_well_specified() {
  static const QqScenario s = [] {
    irops::Rng r(1);
    const Eigen::Index n = 2500;
    Eigen::MatrixXd x(n, 1);
    for (Eigen::Index i = 0; i < n; ++i) x(i, 0) = r.uniform(0.0, 3.0);
    irops::featsel::GprHyperparameters hp;
    hp.lengthscales = Eigen::VectorXd::Constant(1, 1.0);
    Eigen::MatrixXd k = irops::featsel::kernel_matrix(x, x, hp);
    k.diagonal().array() += 1e-8;
    const Eigen::LLT<Eigen::MatrixXd> llt(k);
    Eigen::VectorXd z(n);
    for (auto& v : z) v = r.normal();
    Eigen::VectorXd y = llt.matrixL() * z;
    for (auto& v : y) v += std::sqrt(0.1) * r.normal();
    return qq_scenario(x, y, 1, 1000, 1);
  }();
  return s;
}

/// Multiplicative lognormal noise fitted on the raw scale.
inline const QqScenario& qq_raw_lognormal() {
  static const QqScenario s = [] {
    irops::Rng r(202);
    Eigen::MatrixXd x(1700, 1);
    Eigen::VectorXd y(1700);
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      x(i, 0) = r.uniform(0.0, 1.0);
      y(i) = std::exp(1.0 + x(i, 0) + 0.5 * r.normal());
    }
    return qq_scenario(x, y, 202, 200, 3);
  }();
  return s;
}

}  // namespace fixtures
