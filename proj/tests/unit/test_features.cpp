#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "irops/core/error.hpp"
#include "irops/core/rng.hpp"
#include "irops/features/categorical.hpp"
#include "irops/features/engineer.hpp"
#include "irops/features/geodesy.hpp"
#include "irops/features/scaler.hpp"
#include "irops/features/time_encoding.hpp"
#include "irops/features/yeo_johnson.hpp"
#include "irops/synth/synth.hpp"
#include "oracles.hpp"

using namespace irops;
using namespace irops::features;
using std::numbers::pi;

TEST_CASE("unit vectors") {
  auto v = latlon_to_unit_vector(0, 0);
  CHECK(v.x == 1.0);
  CHECK(v.y == 0.0);
  CHECK(v.z == 0.0);
  v = latlon_to_unit_vector(90, 123);
  CHECK(std::abs(v.x) < 1e-12);
  CHECK(std::abs(v.y) < 1e-12);
  CHECK(std::abs(v.z - 1.0) < 1e-12);
  v = latlon_to_unit_vector(45, 45);
  CHECK(std::abs(v.x - 0.5) < 1e-12);
  CHECK(std::abs(v.y - 0.5) < 1e-12);
  CHECK(std::abs(v.z - std::sqrt(2.0) / 2) < 1e-12);
  CHECK_THROWS_AS(latlon_to_unit_vector(90.1, 0), DomainError);
  CHECK_THROWS_AS(latlon_to_unit_vector(0, -181), DomainError);
  Rng r(1);
  for (int i = 0; i < 1000; ++i) {
    const auto u = latlon_to_unit_vector(r.uniform(-90, 90), r.uniform(-180, 180));
    CHECK(std::abs(u.x * u.x + u.y * u.y + u.z * u.z - 1.0) <= 1e-12);
  }
}

TEST_CASE("vincenty against the textbook oracle") {
  CHECK(vincenty_distance({10, 20}, {10, 20}) == 0.0);
  CHECK(std::abs(vincenty_distance({0, 0}, {0, 1}) - 111319.491) <= 0.01);
  Rng r(2024);
  int compared = 0;
  for (int i = 0; i < 1000; ++i) {
    const GeoPoint a{r.uniform(-89, 89), r.uniform(-180, 180)};
    const GeoPoint b{r.uniform(-89, 89), r.uniform(-180, 180)};
    const auto oracle = test_oracles::vincenty_textbook(a.lat_deg, a.lon_deg, b.lat_deg, b.lon_deg);
    if (!oracle) {
      continue;
    }
    const double d = vincenty_distance(a, b);
    CHECK(std::abs(d - *oracle) <= 1e-3);
    CHECK(d == vincenty_distance(b, a));
    CHECK(d > 0.0);
    ++compared;
  }
  CHECK(compared >= 990);
}

TEST_CASE("near-antipodal pairs fail loudly unless fallback is requested") {
  const GeoPoint a{0.0, 0.0};
  const GeoPoint b{0.5, 179.7};
  CHECK_THROWS_AS(vincenty_distance(a, b), ConvergenceError);
  VincentyOptions o;
  o.haversine_fallback = true;
  CHECK(vincenty_distance(a, b, o) == doctest::Approx(haversine_distance(a, b)));
}

TEST_CASE("time of day encoding") {
  auto p = encode_time_of_day(0);
  CHECK(p.sin == 0.0);
  CHECK(p.cos == 1.0);
  p = encode_time_of_day(360);
  CHECK(std::abs(p.sin - 1.0) < 1e-12);
  CHECK(std::abs(p.cos) < 1e-12);
  p = encode_time_of_day(1439);
  const double arc = std::hypot(p.sin - 0.0, p.cos - 1.0);
  CHECK(arc <= 2 * pi / 1440 + 1e-12);
  CHECK_THROWS_AS(encode_time_of_day(1440), DomainError);
  CHECK_THROWS_AS(encode_time_of_day(-1), DomainError);
  for (int m = 0; m < 1440; m += 7) {
    const auto q = encode_time_of_day(m);
    CHECK(std::abs(q.sin * q.sin + q.cos * q.cos - 1.0) <= 1e-12);
  }
}

TEST_CASE("shift fraction") {
  const ShiftSchedule s;
  auto f = encode_shift_fraction(840, s);
  CHECK(f.fraction == 0.0);
  CHECK(f.cos_component == 1.0);
  f = encode_shift_fraction(840 + 240, s);
  CHECK(f.fraction == 0.5);
  CHECK(f.cos_component == doctest::Approx(-1.0));
  CHECK(encode_shift_fraction(960, s).fraction == doctest::Approx(0.25));
  // overnight shift wraps past midnight
  CHECK(encode_shift_fraction(60, s).fraction == doctest::Approx(180.0 / 480.0));
  CHECK_THROWS_AS(validate(ShiftSchedule{{}, 480}), ConfigError);
  CHECK_THROWS_AS(validate(ShiftSchedule{{360, 840}, 480}), ConfigError);
  CHECK_THROWS_AS(validate(ShiftSchedule{{840, 360, 1320}, 480}), ConfigError);
  CHECK_THROWS_AS(encode_shift_fraction(0, ShiftSchedule{{0}, 0}), ConfigError);
}

TEST_CASE("date encoding") {
  using namespace std::chrono;
  const auto jan1 = encode_date(Date{year(2017), January, day(1)});
  CHECK(jan1.doy.sin == 0.0);
  CHECK(jan1.doy.cos == 1.0);
  // 2017-01-02 is a Monday
  const auto mon = encode_date(Date{year(2017), January, day(2)});
  CHECK(mon.dow.sin == 0.0);
  CHECK(mon.dow.cos == 1.0);
  const auto dec31 = encode_date(Date{year(2017), December, day(31)});
  const double phase = std::atan2(dec31.doy.sin, dec31.doy.cos);
  CHECK(std::abs(phase) <= 2 * pi / 365 + 1e-12);
  CHECK(day_of_year(Date{year(2016), December, day(31)}) == 366);
  const auto mid = encode_date(Date{year(2017), February, day(15)});
  CHECK(std::atan2(mid.month.sin, mid.month.cos) == doctest::Approx(2 * pi * 14 / 28));
  for (const auto& pr : {mid.season, mid.month, mid.dow, mid.doy}) {
    CHECK(std::abs(pr.sin * pr.sin + pr.cos * pr.cos - 1.0) <= 1e-12);
  }
}

TEST_CASE("one-hot and seat mapping") {
  const std::vector<std::string> one{"x", "x"};
  auto e = one_hot(one);
  CHECK(e.indicators.cols() == 1);
  CHECK(e.indicators.sum() == 2.0);
  const std::vector<std::string> aba{"B", "A", "B"};
  e = one_hot(aba);
  CHECK(e.names == std::vector<std::string>{"A", "B"});
  CHECK(e.indicators(0, 1) == 1.0);
  CHECK(e.indicators(1, 0) == 1.0);
  CHECK(e.indicators.rowwise().sum().isOnes());
  CHECK_THROWS_AS(one_hot(std::span<const std::string>{}), EmptyInputError);

  const std::map<std::string, int> seats{{"73H", 175}, {"7M8", 175}, {"735", 122}};
  CHECK(aircraft_seats("73H", seats) == 175);
  CHECK(aircraft_seats("73H", seats) == aircraft_seats("7M8", seats));
  CHECK_THROWS_AS(aircraft_seats("XXX", seats), LookupError);
}

TEST_CASE("yeo-johnson transform") {
  Rng r(3);
  for (int i = 0; i < 200; ++i) {
    const double x = r.normal() * 10;
    CHECK(yeo_johnson(x, 1.0) == doctest::Approx(x).epsilon(1e-14));
  }
  for (const double lambda : {-5.0, -2.0, 0.0, 0.5, 1.0, 2.0, 5.0}) {
    std::vector<double> xs;
    for (int i = 0; i < 200; ++i) xs.push_back(r.normal() * 3);
    std::sort(xs.begin(), xs.end());
    for (std::size_t i = 1; i < xs.size(); ++i) {
      if (xs[i] > xs[i - 1]) {
        CHECK(yeo_johnson(xs[i], lambda) > yeo_johnson(xs[i - 1], lambda));
      }
    }
    for (const double x : xs) {
      CHECK(yeo_johnson_inverse(yeo_johnson(x, lambda), lambda) == doctest::Approx(x).epsilon(1e-9));
    }
  }
}

TEST_CASE("yeo-johnson lambda matches the grid oracle") {
  Rng r(11);
  std::vector<double> gauss(5000);
  for (auto& v : gauss) v = r.normal(3.0, 1.0);
  const double lg = fit_yeo_johnson_lambda(gauss);
  CHECK(lg >= 0.8);
  CHECK(lg <= 1.2);

  std::vector<double> lognorm(2000);
  for (auto& v : lognorm) v = std::exp(r.normal(0.0, 0.8));
  const double ll = fit_yeo_johnson_lambda(lognorm);
  std::vector<double> t;
  for (double v : lognorm) t.push_back(yeo_johnson(v, ll));
  CHECK(std::abs(test_oracles::skewness(t)) < std::abs(test_oracles::skewness(lognorm)));

  for (const auto* sample : {&gauss, &lognorm}) {
    const double fitted = fit_yeo_johnson_lambda(*sample);
    const double grid = test_oracles::grid_argmax(
        [&](double lam) { return test_oracles::yeo_johnson_profile_ll(*sample, lam); }, -5.0, 5.0,
        1001);
    CHECK(std::abs(fitted - grid) <= 0.01 + 1e-9);
  }
  const std::vector<double> flat{2, 2, 2, 2};
  CHECK_THROWS_AS(fit_yeo_johnson_lambda(flat), DomainError);
  const std::vector<double> two{1, 2};
  CHECK_THROWS_AS(fit_yeo_johnson_lambda(two), DomainError);
}

namespace {

FeatureMatrix matrix_of(const Eigen::MatrixXd& v) {
  FeatureMatrix fm;
  fm.values = v;
  for (Eigen::Index j = 0; j < v.cols(); ++j) {
    fm.descriptors.push_back(make_descriptor("c" + std::to_string(j), AbstractionClass::Epistemic,
                                             FeatureCategory::Continuous));
  }
  return fm;
}

}  // namespace

TEST_CASE("scaler hand examples") {
  Eigen::MatrixXd v(3, 1);
  v << 1, 2, 3;
  const auto z = apply_scaler(fit_scaler(matrix_of(v), ScalerMethod::Standard), matrix_of(v));
  CHECK(z.values(0, 0) == doctest::Approx(-1.224744871391589));
  CHECK(z.values(1, 0) == doctest::Approx(0.0));
  CHECK(z.values(2, 0) == doctest::Approx(1.224744871391589));

  Eigen::MatrixXd w(2, 1);
  w << 5, 10;
  const auto rr = apply_scaler(fit_scaler(matrix_of(w), ScalerMethod::Range), matrix_of(w));
  CHECK(rr.values(0, 0) == 0.0);
  CHECK(rr.values(1, 0) == 1.0);
}

TEST_CASE("constant columns are flagged and zero filled") {
  Eigen::MatrixXd v(4, 2);
  v << 1, 7, 2, 7, 3, 7, 4, 7;
  for (const auto m : {ScalerMethod::Standard, ScalerMethod::Range, ScalerMethod::Power}) {
    const auto model = fit_scaler(matrix_of(v), m);
    CHECK(model.warnings.size() == 1);
    const auto z = apply_scaler(model, matrix_of(v));
    CHECK(z.values.col(1).isZero());
    CHECK(z.values.allFinite());
    CHECK(inverse_scaler(model, z).values.col(1).isConstant(7.0));
  }
}

TEST_CASE("scaler properties on random matrices") {
  Rng r(99);
  for (int trial = 0; trial < 10; ++trial) {
    Eigen::MatrixXd v(200, 5);
    for (Eigen::Index i = 0; i < v.rows(); ++i) {
      for (Eigen::Index j = 0; j < v.cols(); ++j) {
        v(i, j) = j % 2 ? std::exp(r.normal(0, 1)) : r.normal(5, 3);
      }
    }
    const auto x = matrix_of(v);
    for (const auto m : {ScalerMethod::Standard, ScalerMethod::Range, ScalerMethod::Power}) {
      const auto model = fit_scaler(x, m);
      const auto z = apply_scaler(model, x);
      const auto back = inverse_scaler(model, z);
      const double tol = m == ScalerMethod::Power ? 1e-6 : 1e-8;
      CHECK((back.values - v).cwiseAbs().maxCoeff() <= tol * std::max(1.0, v.cwiseAbs().maxCoeff()));
      for (Eigen::Index j = 0; j < v.cols(); ++j) {
        const auto c = z.values.col(j);
        if (m == ScalerMethod::Range) {
          CHECK(c.minCoeff() == 0.0);
          CHECK(c.maxCoeff() == 1.0);
        } else {
          CHECK(std::abs(c.mean()) < 1e-9);
          CHECK(std::abs((c.array() - c.mean()).square().mean() - 1.0) < 1e-6);
        }
      }
      const auto reread = scaler_from_keyed(KeyedText::parse(scaler_to_keyed(model).to_string()));
      CHECK(apply_scaler(reread, x).values == z.values);
    }
  }
  CHECK_THROWS_AS(parse_scaler_method("robust"), DomainError);
  Eigen::MatrixXd one(1, 1);
  one << 1;
  CHECK_THROWS_AS(fit_scaler(matrix_of(one), ScalerMethod::Standard), DomainError);
  Eigen::MatrixXd three(3, 2);
  three.setRandom();
  const auto model = fit_scaler(matrix_of(three), ScalerMethod::Standard);
  CHECK_THROWS_AS(apply_scaler(model, matrix_of(Eigen::MatrixXd::Random(3, 3))), DimensionError);
}

TEST_CASE("engineered features are finite and described") {
  const auto cfg = synth::default_table1_config(3000, 8);
  const auto ds = synth::generate(cfg);
  EngineerOptions o;
  o.seat_map = cfg.seat_map;
  const auto e = engineer_features(ds, o);
  const auto& m = e.matrix;
  CHECK_NOTHROW(m.validate());
  CHECK(m.values.allFinite());
  std::size_t dropped = 0;
  for (const auto& r : ds) {
    dropped += r.disruption_effect == DisruptionEffect::Cancelled ||
               r.disruption_effect == DisruptionEffect::Diverted;
  }
  CHECK(e.excluded_cancelled_or_diverted == dropped);
  CHECK(static_cast<std::size_t>(m.rows()) == ds.size() - dropped);
  CHECK(m.labels.size() == static_cast<std::size_t>(m.rows()));
  const auto& generated = cfg.delay_codes.at(FunctionalDomain::Weather);
  for (const auto& n : turnaround_regression_features()) {
    const auto& wx = weather_delay_codes();
    const bool code = std::find(wx.begin(), wx.end(), n) != wx.end();
    if (code && std::find(generated.begin(), generated.end(), n) == generated.end()) {
      CHECK_FALSE(m.column_index(n).has_value());
      continue;
    }
    CHECK_MESSAGE(m.column_index(n).has_value(), n);
  }
  for (const auto* n : {"sin_season", "sin_moy", "sin_dow", "sin_date"}) {
    CHECK_MESSAGE(m.column_index(n).has_value(), n);
  }
  CHECK(m.descriptors.back().name == "ACTL_TURN_MINS");
  o.include_target = false;
  CHECK_FALSE(engineer_features(ds, o).matrix.column_index("ACTL_TURN_MINS"));
  o.seat_map.erase("73H");
  CHECK_THROWS_AS(engineer_features(ds, o), LookupError);
}
