// Copyright 2026 the uwstereo authors
// SPDX-License-Identifier: Apache-2.0

#include "geometry.hpp"

#include <cmath>
#include <sstream>

namespace uws {

namespace {

void require_unit(const Vec3& v, const char* what) {
  if (std::abs(v.norm() - 1.0) > 1e-12) {
    std::ostringstream oss;
    oss << what << " must be unit length, |v| = " << v.norm();
    throw Error(ErrorCode::InvalidArgument, oss.str());
  }
}

}  // namespace

Ray::Ray(const Vec3& o, const Vec3& d, double n)
    : origin(o), direction(d), medium_index(n) {
  require_unit(direction, "ray direction");
  if (!(medium_index >= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "medium index must be >= 1");
  }
}

PortPlane::PortPlane(const Vec3& n, double offset, double thick)
    : normal(n), inner_offset(offset), thickness(thick) {
  require_unit(normal, "port normal");
  if (!(thickness > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "port thickness must be > 0");
  }
}

MediaIndices::MediaIndices(double air, double glass, double water)
    : n_air(air), n_glass(glass), n_water(water) {
  for (double n : {n_air, n_glass, n_water}) {
    if (!(n >= 1.0 && n <= 2.0)) {
      std::ostringstream oss;
      oss << "refractive index " << n << " outside sanity bounds [1, 2]";
      throw Error(ErrorCode::InvalidArgument, oss.str());
    }
  }
}

Vec3 refract_direction(const Vec3& incident, const Vec3& surface_normal,
                       double n1, double n2) {
  const double cos1 = incident.dot(surface_normal);
  if (!(cos1 > 0.0)) {
    throw Error(ErrorCode::InvalidArgument,
                "surface normal must be oriented along propagation");
  }
  const double eta = n1 / n2;
  // Decompose into normal and tangential parts; Snell scales the tangential
  // component by eta. sin^2(theta2) = eta^2 * (1 - cos1^2).
  const Vec3 tangential = incident - cos1 * surface_normal;
  const double sin2_sq = eta * eta * tangential.squaredNorm();
  if (sin2_sq > 1.0) {
    std::ostringstream oss;
    oss << "n1*sin(theta1)/n2 = " << std::sqrt(sin2_sq) << " > 1";
    throw Error(ErrorCode::TotalInternalReflection, oss.str());
  }
  const double cos2 = std::sqrt(1.0 - sin2_sq);
  Vec3 refracted = eta * tangential + cos2 * surface_normal;
  // Renormalize to keep |d| = 1 to machine precision after the arithmetic.
  return refracted.normalized();
}

Vec3 intersect_ray_plane(const Ray& ray, const Vec3& normal, double offset) {
  const double denom = ray.direction.dot(normal);
  if (std::abs(denom) < 1e-14) {
    throw Error(ErrorCode::NoForwardIntersection, "ray parallel to plane");
  }
  const double t = (offset - normal.dot(ray.origin)) / denom;
  if (!(t > 0.0)) {
    std::ostringstream oss;
    oss << "intersection behind ray origin, t = " << t;
    throw Error(ErrorCode::NoForwardIntersection, oss.str());
  }
  return ray.at(t);
}

Ray trace_through_port(const Ray& ray_air, const PortPlane& port,
                       const MediaIndices& media) {
  if (!(ray_air.direction.dot(port.normal) > 0.0)) {
    throw Error(ErrorCode::NoForwardIntersection,
                "ray does not travel toward the port");
  }
  // Air -> glass at the inner surface.
  const Vec3 inner_hit =
      intersect_ray_plane(ray_air, port.normal, port.inner_offset);
  const Vec3 dir_glass = refract_direction(ray_air.direction, port.normal,
                                           media.n_air, media.n_glass);
  // Glass -> water at the outer surface.
  Ray glass_ray;
  glass_ray.origin = inner_hit;
  glass_ray.direction = dir_glass;
  glass_ray.medium_index = media.n_glass;
  const Vec3 outer_hit =
      intersect_ray_plane(glass_ray, port.normal, port.outer_offset());
  const Vec3 dir_water = refract_direction(dir_glass, port.normal,
                                           media.n_glass, media.n_water);
  Ray water_ray;
  water_ray.origin = outer_hit;
  water_ray.direction = dir_water;
  water_ray.medium_index = media.n_water;
  return water_ray;
}

ClosestPointPair closest_point_pair(const Ray& ray_a, const Ray& ray_b) {
  const Vec3& da = ray_a.direction;
  const Vec3& db = ray_b.direction;
  if (da.cross(db).norm() <= 1e-14) {
    throw Error(ErrorCode::DegenerateRays, "rays are parallel");
  }
  // Normal equations of min |a0 + s*da - b0 - t*db|^2 over (s, t):
  //   [ da.da  -da.db ] [s]   [ da.(b0-a0) ]
  //   [-da.db   db.db ] [t] = [-db.(b0-a0) ]
  // with unit directions da.da = db.db = 1.
  const Vec3 w = ray_b.origin - ray_a.origin;
  const double d = da.dot(db);
  const double det = 1.0 - d * d;
  const double s = (da.dot(w) - d * db.dot(w)) / det;
  const double t = (d * da.dot(w) - db.dot(w)) / det;
  if (s < 0.0 || t < 0.0) {
    std::ostringstream oss;
    oss << "closest approach behind a ray origin, s = " << s << ", t = " << t;
    throw Error(ErrorCode::BehindCamera, oss.str());
  }
  ClosestPointPair result;
  result.point_a = ray_a.at(s);
  result.point_b = ray_b.at(t);
  result.midpoint = 0.5 * (result.point_a + result.point_b);
  result.gap = (result.point_a - result.point_b).norm();
  return result;
}

}  // namespace uws
