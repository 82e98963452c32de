#include "irops/features/geodesy.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "irops/core/error.hpp"

namespace irops::features {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

void check_point(double lat, double lon) {
  if (!(lat >= -90.0 && lat <= 90.0)) {
    throw DomainError("latitude out of range: " + std::to_string(lat));
  }
  if (!(lon >= -180.0 && lon <= 180.0)) {
    throw DomainError("longitude out of range: " + std::to_string(lon));
  }
}

}  // namespace

UnitVector latlon_to_unit_vector(double lat_deg, double lon_deg) {
  check_point(lat_deg, lon_deg);
  const double lat = lat_deg * kDeg;
  const double lon = lon_deg * kDeg;
  return {std::cos(lat) * std::cos(lon), std::cos(lat) * std::sin(lon), std::sin(lat)};
}

double haversine_distance(GeoPoint p1, GeoPoint p2) {
  check_point(p1.lat_deg, p1.lon_deg);
  check_point(p2.lat_deg, p2.lon_deg);
  constexpr double kMeanRadius = (2.0 * kWgs84A + kWgs84A * (1.0 - kWgs84F)) / 3.0;
  const double dlat = (p2.lat_deg - p1.lat_deg) * kDeg;
  const double dlon = (p2.lon_deg - p1.lon_deg) * kDeg;
  const double h = std::sin(dlat / 2) * std::sin(dlat / 2) +
                   std::cos(p1.lat_deg * kDeg) * std::cos(p2.lat_deg * kDeg) *
                       std::sin(dlon / 2) * std::sin(dlon / 2);
  return 2.0 * kMeanRadius * std::asin(std::min(1.0, std::sqrt(h)));
}

double vincenty_distance(GeoPoint p1, GeoPoint p2, const VincentyOptions& options) {
  check_point(p1.lat_deg, p1.lon_deg);
  check_point(p2.lat_deg, p2.lon_deg);
  if (p1.lat_deg == p2.lat_deg && p1.lon_deg == p2.lon_deg) {
    return 0.0;
  }
  // Order the pair canonically so d(p1, p2) and d(p2, p1) run the same arithmetic.
  if (p2.lat_deg < p1.lat_deg || (p2.lat_deg == p1.lat_deg && p2.lon_deg < p1.lon_deg)) {
    std::swap(p1, p2);
  }

  constexpr double a = kWgs84A;
  constexpr double f = kWgs84F;
  constexpr double b = a * (1.0 - f);

  double L = (p2.lon_deg - p1.lon_deg) * kDeg;
  if (L > std::numbers::pi) {
    L -= 2.0 * std::numbers::pi;
  } else if (L < -std::numbers::pi) {
    L += 2.0 * std::numbers::pi;
  }
  const double U1 = std::atan((1.0 - f) * std::tan(p1.lat_deg * kDeg));
  const double U2 = std::atan((1.0 - f) * std::tan(p2.lat_deg * kDeg));
  const double sinU1 = std::sin(U1);
  const double cosU1 = std::cos(U1);
  const double sinU2 = std::sin(U2);
  const double cosU2 = std::cos(U2);

  double lambda = L;
  double sin_sigma = 0.0;
  double cos_sigma = 0.0;
  double sigma = 0.0;
  double cos_sq_alpha = 0.0;
  double cos_2sigma_m = 0.0;
  bool converged = false;
  for (int iter = 0; iter < options.max_iterations; ++iter) {
    const double sin_lambda = std::sin(lambda);
    const double cos_lambda = std::cos(lambda);
    const double t1 = cosU2 * sin_lambda;
    const double t2 = cosU1 * sinU2 - sinU1 * cosU2 * cos_lambda;
    sin_sigma = std::sqrt(t1 * t1 + t2 * t2);
    if (sin_sigma == 0.0) {
      return 0.0;  // coincident after normalisation (e.g. both at a pole)
    }
    cos_sigma = sinU1 * sinU2 + cosU1 * cosU2 * cos_lambda;
    sigma = std::atan2(sin_sigma, cos_sigma);
    const double sin_alpha = cosU1 * cosU2 * sin_lambda / sin_sigma;
    cos_sq_alpha = 1.0 - sin_alpha * sin_alpha;
    // Equatorial line: cos^2(alpha) = 0 and the term vanishes.
    cos_2sigma_m = cos_sq_alpha != 0.0 ? cos_sigma - 2.0 * sinU1 * sinU2 / cos_sq_alpha : 0.0;
    const double C = f / 16.0 * cos_sq_alpha * (4.0 + f * (4.0 - 3.0 * cos_sq_alpha));
    const double previous = lambda;
    lambda = L + (1.0 - C) * f * sin_alpha *
                     (sigma + C * sin_sigma *
                                  (cos_2sigma_m + C * cos_sigma * (-1.0 + 2.0 * cos_2sigma_m * cos_2sigma_m)));
    if (std::abs(lambda - previous) < options.tolerance) {
      converged = true;
      break;
    }
    if (std::abs(lambda) > std::numbers::pi) {
      break;  // diverging; nearly antipodal
    }
  }
  if (!converged) {
    if (options.haversine_fallback) {
      return haversine_distance(p1, p2);
    }
    throw ConvergenceError("Vincenty inverse did not converge (nearly antipodal points)", lambda);
  }

  const double u_sq = cos_sq_alpha * (a * a - b * b) / (b * b);
  const double A = 1.0 + u_sq / 16384.0 * (4096.0 + u_sq * (-768.0 + u_sq * (320.0 - 175.0 * u_sq)));
  const double B = u_sq / 1024.0 * (256.0 + u_sq * (-128.0 + u_sq * (74.0 - 47.0 * u_sq)));
  const double delta_sigma =
      B * sin_sigma *
      (cos_2sigma_m +
       B / 4.0 *
           (cos_sigma * (-1.0 + 2.0 * cos_2sigma_m * cos_2sigma_m) -
            B / 6.0 * cos_2sigma_m * (-3.0 + 4.0 * sin_sigma * sin_sigma) *
                (-3.0 + 4.0 * cos_2sigma_m * cos_2sigma_m)));
  return b * A * (sigma - delta_sigma);
}

}  // namespace irops::features
