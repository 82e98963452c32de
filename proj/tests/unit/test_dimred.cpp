#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "irops/core/error.hpp"
#include "irops/core/rng.hpp"
#include "irops/dimred/pca.hpp"
#include "irops/dimred/tsne.hpp"
#include "irops/features/engineer.hpp"
#include "irops/features/scaler.hpp"
#include "irops/flight_data/disruption_report.hpp"
#include "irops/synth/synth.hpp"
#include "oracles.hpp"

using namespace irops;
using namespace irops::dimred;

namespace {

Eigen::MatrixXd gaussian(Eigen::Index n, Eigen::Index m, std::uint64_t seed) {
  Rng r(seed);
  Eigen::MatrixXd x(n, m);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) x(i, j) = r.normal();
  }
  return x;
}

Eigen::MatrixXd random_rotation(Eigen::Index m, std::uint64_t seed) {
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(gaussian(m, m, seed));
  return qr.householderQ();
}

// Three tight clusters in 5-D, 100 points each.
Eigen::MatrixXd three_clusters(std::vector<int>& truth) {
  Rng r(17);
  Eigen::MatrixXd x(300, 5);
  truth.clear();
  for (Eigen::Index i = 0; i < 300; ++i) {
    const int c = static_cast<int>(i % 3);
    truth.push_back(c);
    for (Eigen::Index j = 0; j < 5; ++j) {
      x(i, j) = (j == c ? 10.0 : 0.0) + 0.3 * r.normal();
    }
  }
  return x;
}

}  // namespace

TEST_CASE("pca on line data") {
  Eigen::MatrixXd x(50, 2);
  for (int i = 0; i < 50; ++i) {
    x(i, 0) = i * 0.3 - 2;
    x(i, 1) = 2 * x(i, 0) + 1;
  }
  const auto m = pca_fit(x, 2);
  CHECK(std::abs(m.explained_variance_ratio(0) - 1.0) <= 1e-9);
  CHECK(std::abs(m.explained_variance_ratio(1)) <= 1e-9);
  CHECK(m.eigenvalues(1) >= 0.0);
  // sign convention: largest |loading| positive
  CHECK(m.components(0, 1) > 0.0);
}

TEST_CASE("pca structural invariants") {
  const Eigen::MatrixXd x = gaussian(400, 6, 3) * Eigen::Vector<double, 6>(3, 2, 1.5, 1, 0.5, 0.2).asDiagonal();
  for (Eigen::Index d = 1; d <= 6; ++d) {
    const auto m = pca_fit(x, d);
    CHECK((m.components * m.components.transpose() - Eigen::MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff() <= 1e-8);
    for (Eigen::Index k = 1; k < d; ++k) CHECK(m.eigenvalues(k) <= m.eigenvalues(k - 1));
    CHECK(m.explained_variance_ratio.minCoeff() >= 0.0);
    CHECK(m.explained_variance_ratio.sum() <= 1.0 + 1e-9);
    for (Eigen::Index k = 0; k < d; ++k) {
      Eigen::Index arg = 0;
      m.components.row(k).cwiseAbs().maxCoeff(&arg);
      CHECK(m.components(k, arg) > 0.0);
    }
  }
  const auto full = pca_fit(x, 6);
  const auto y = pca_transform(full, x);
  CHECK((pca_reconstruct(full, y) - x).cwiseAbs().maxCoeff() <= 1e-8);
  CHECK(pca_transform(full, full.mean.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
  const Eigen::MatrixXd yc = y.rowwise() - y.colwise().mean();
  const Eigen::MatrixXd cov = yc.transpose() * yc / static_cast<double>(y.rows() - 1);
  const Eigen::MatrixXd off = cov - Eigen::MatrixXd(cov.diagonal().asDiagonal());
  CHECK(off.cwiseAbs().maxCoeff() < 1e-6);
  // eigenvalues are the variances of the scores
  for (Eigen::Index k = 0; k < 6; ++k) CHECK(cov(k, k) == doctest::Approx(full.eigenvalues(k)));

  const auto rotated = pca_fit(x * random_rotation(6, 9), 6);
  CHECK((rotated.eigenvalues - full.eigenvalues).cwiseAbs().maxCoeff() <= 1e-8);

  CHECK_THROWS_AS(pca_fit(x, 0), DomainError);
  CHECK_THROWS_AS(pca_fit(x, 7), DomainError);
  CHECK_THROWS_AS(pca_fit(x.topRows(3), 3), DomainError);
  CHECK_THROWS_AS(pca_transform(full, x.leftCols(5)), DimensionError);
}

TEST_CASE("pca on isotropic data spreads variance evenly") {
  const auto m = pca_fit(gaussian(5000, 5, 21), 5);
  for (Eigen::Index k = 0; k < 5; ++k) CHECK(std::abs(m.explained_variance_ratio(k) - 0.2) <= 0.02);
}

TEST_CASE("perplexity calibration") {
  const std::vector<double> two{1.0, 1.0};
  const auto c = perplexity_calibration(two, 2.0);
  CHECK(c.probabilities[0] == doctest::Approx(0.5));
  CHECK(c.probabilities[1] == doctest::Approx(0.5));

  Rng r(4);
  std::vector<double> d(99);
  for (auto& v : d) v = std::pow(r.normal(), 2) * 7 + 0.01;
  for (const double perp : {5.0, 15.0, 30.0}) {
    const auto cal = perplexity_calibration(d, perp);
    double h = 0.0;
    double sum = 0.0;
    for (const double p : cal.probabilities) {
      sum += p;
      if (p > 0) h -= p * std::log2(p);
    }
    CHECK(std::abs(sum - 1.0) < 1e-12);
    CHECK(std::abs(h - std::log2(perp)) <= 1e-4);
    CHECK(cal.sigma == doctest::Approx(std::sqrt(1.0 / (2 * cal.beta))));

    std::vector<double> scaled = d;
    for (auto& v : scaled) v *= 9.0;
    const auto cs = perplexity_calibration(scaled, perp);
    for (std::size_t j = 0; j < d.size(); ++j) CHECK(std::abs(cs.probabilities[j] - cal.probabilities[j]) <= 1e-8);
    CHECK(cs.sigma == doctest::Approx(3.0 * cal.sigma).epsilon(1e-9));
  }
  CHECK_THROWS_AS(perplexity_calibration(two, 3.0), DomainError);
}

TEST_CASE("joint probabilities and similarities are symmetric distributions") {
  const Eigen::MatrixXd x = gaussian(40, 4, 8);
  const auto p = joint_probabilities(x, 10.0);
  CHECK((p - p.transpose()).cwiseAbs().maxCoeff() == 0.0);
  CHECK(std::abs(p.sum() - 1.0) <= 1e-9);
  CHECK(p.diagonal().isZero());
  const auto q = student_t_similarities(gaussian(40, 2, 9));
  CHECK((q - q.transpose()).cwiseAbs().maxCoeff() <= 1e-15);
  CHECK(std::abs(q.sum() - 1.0) <= 1e-9);
  CHECK(q.diagonal().isZero());
  CHECK(kl_divergence(p, p) == 0.0);
  CHECK(kl_divergence(p, q) >= 0.0);
}

TEST_CASE("t-SNE gradient matches central differences") {
  const Eigen::MatrixXd x = gaussian(20, 4, 12);
  const auto p = joint_probabilities(x, 5.0);
  Eigen::MatrixXd y = gaussian(20, 2, 13);
  for (const double ex : {1.0, 12.0}) {
    const Eigen::MatrixXd g = tsne_gradient(p, y, ex);
    const Eigen::MatrixXd pe = ex * p;
    double worst = 0.0;
    for (Eigen::Index i = 0; i < y.rows(); ++i) {
      for (Eigen::Index k = 0; k < 2; ++k) {
        const double h = 1e-5;
        Eigen::MatrixXd yp = y;
        Eigen::MatrixXd ym = y;
        yp(i, k) += h;
        ym(i, k) -= h;
        // sum eP log(1 + d^2) + log Z; equals KL(P||Q) up to a constant when e = 1
        const auto obj = [&](const Eigen::MatrixXd& yy) {
          double s = 0.0;
          double z = 0.0;
          for (Eigen::Index a = 0; a < 20; ++a)
            for (Eigen::Index b = 0; b < 20; ++b)
              if (a != b) {
                const double d2 = (yy.row(a) - yy.row(b)).squaredNorm();
                s += pe(a, b) * std::log1p(d2);
                z += 1.0 / (1.0 + d2);
              }
          return s + std::log(z);
        };
        const double fd = (obj(yp) - obj(ym)) / (2 * h);
        worst = std::max(worst, std::abs(fd - g(i, k)) / std::max(1e-8, std::abs(fd)));
      }
    }
    CHECK(worst <= 1e-4);
  }
}

TEST_CASE("t-SNE recovers separated clusters and is deterministic") {
  std::vector<int> truth;
  const auto x = three_clusters(truth);
  TsneParams params;
  params.seed = 5;
  const auto a = tsne_embed(x, params);
  const auto b = tsne_embed(x, params);
  CHECK(a.embedding == b.embedding);
  CHECK(a.embedding.rows() == 300);
  CHECK(a.embedding.cols() == 2);
  const auto labels = test_oracles::kmeans(a.embedding, 3);
  CHECK(test_oracles::purity(labels, truth, 3, 3) >= 0.9);
  CHECK(a.final_kl() < a.post_exaggeration_kl());
  for (const auto& s : a.kl_trace) CHECK(s.kl >= 0.0);
  CHECK(a.kl_trace.front().iteration == 0);
  CHECK(a.kl_trace.back().iteration == params.n_iter);

  params.seed = 6;
  CHECK(tsne_embed(x, params).embedding != a.embedding);
}

TEST_CASE("t-SNE input checks") {
  CHECK_THROWS_AS(tsne_embed(gaussian(9, 3, 1)), DomainError);
  TsneParams p;
  p.perplexity = 30;
  CHECK_THROWS_AS(tsne_embed(gaussian(50, 3, 1), p), DomainError);
  p.perplexity = 1.5;
  CHECK_THROWS_AS(tsne_embed(gaussian(50, 3, 1), p), DomainError);
  p.perplexity = 5;
  CHECK_THROWS_AS(tsne_embed(Eigen::MatrixXd::Ones(30, 3), p), DomainError);
}

TEST_CASE("weather delay codes separate on the embedding") {
  const auto cfg = synth::default_table1_config(20000, 42);
  const auto sub = filter_subset(synth::generate(cfg), FunctionalDomain::Weather, DisruptionEffect::Delayed);
  features::EngineerOptions o;
  o.seat_map = cfg.seat_map;
  o.include_target = false;
  const auto fm = features::engineer_features(sub, o).matrix;
  const auto scaled = features::apply_scaler(features::fit_scaler(fm, features::ScalerMethod::Range), fm);
  TsneParams params;
  params.seed = 1;
  params.perplexity = std::min(30.0, std::floor((static_cast<double>(fm.rows()) - 1) / 3));
  const auto emb = tsne_embed(scaled.values, params);

  std::vector<int> lab;
  std::vector<std::string> names;
  for (const auto& l : fm.labels) {
    auto it = std::find(names.begin(), names.end(), l);
    if (it == names.end()) {
      names.push_back(l);
      it = names.end() - 1;
    }
    lab.push_back(static_cast<int>(it - names.begin()));
  }
  CHECK(names.size() == 4);
  const double real = test_oracles::silhouette(emb.embedding, lab);
  Rng r(77);
  double best_perm = -1.0;
  for (int t = 0; t < 5; ++t) {
    auto perm = lab;
    for (std::size_t i = perm.size() - 1; i > 0; --i) std::swap(perm[i], perm[r.index(i + 1)]);
    best_perm = std::max(best_perm, test_oracles::silhouette(emb.embedding, perm));
  }
  CHECK(real > best_perm);
}
