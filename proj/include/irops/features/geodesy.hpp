#pragma once

namespace irops::features {

/// WGS-84 ellipsoid.
inline constexpr double kWgs84A = 6'378'137.0;
inline constexpr double kWgs84F = 1.0 / 298.257223563;

struct GeoPoint {
  double lat_deg = 0.0;
  double lon_deg = 0.0;
};

struct UnitVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

/// Earth-centred direction of a station on the unit sphere.
/// Throws DomainError for lat outside [-90, 90] or lon outside [-180, 180].
UnitVector latlon_to_unit_vector(double lat_deg, double lon_deg);

struct VincentyOptions {
  int max_iterations = 200;
  double tolerance = 1e-12;  ///< on the change in auxiliary-sphere longitude, radians
  /// Return the spherical (haversine) distance on mean radius instead of
  /// throwing when the iteration fails to converge.
  bool haversine_fallback = false;
};

/// Inverse geodesic distance in metres on the WGS-84 ellipsoid.
/// Throws ConvergenceError (carrying the last lambda iterate) for nearly
/// antipodal pairs unless `haversine_fallback` is set.
double vincenty_distance(GeoPoint p1, GeoPoint p2, const VincentyOptions& options = {});

/// Great-circle distance on a sphere of the WGS-84 mean radius.
double haversine_distance(GeoPoint p1, GeoPoint p2);

}  // namespace irops::features
