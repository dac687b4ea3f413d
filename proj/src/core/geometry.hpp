// Copyright 2026 the uwstereo authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>

#include "errors.hpp"

namespace uws {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

// A half-line in the world frame, tagged with the refractive index of the
// medium it travels in. Direction is kept unit-length.
struct Ray {
  Vec3 origin = Vec3::Zero();
  Vec3 direction = Vec3::UnitZ();
  double medium_index = 1.0;

  Ray() = default;
  Ray(const Vec3& o, const Vec3& d, double n);

  Vec3 at(double t) const { return origin + t * direction; }
};

// Planar glass window shared by both cameras. The normal points from the air
// side toward the water side; the inner (air-facing) surface is the plane
// {x : normal.x = inner_offset}, the outer one at inner_offset + thickness.
struct PortPlane {
  Vec3 normal = Vec3::UnitZ();
  double inner_offset = 0.0;
  double thickness = 0.0;

  PortPlane() = default;
  PortPlane(const Vec3& n, double offset, double thick);

  double outer_offset() const { return inner_offset + thickness; }
};

struct MediaIndices {
  double n_air = 1.0;
  double n_glass = 1.0;
  double n_water = 1.0;

  MediaIndices() = default;
  MediaIndices(double air, double glass, double water);
};

struct ClosestPointPair {
  Vec3 point_a;
  Vec3 point_b;
  Vec3 midpoint;
  double gap = 0.0;
};

// Rigid transform from a local planar frame (the plane is z = 0 locally)
// into the world frame. Used for target planes and calibration boards.
struct PlanePose {
  Mat3 rotation = Mat3::Identity();
  Vec3 translation = Vec3::Zero();

  Vec3 to_world(const Vec3& local) const {
    return rotation * local + translation;
  }
  Vec3 normal() const { return rotation.col(2); }
};

// Snell refraction of a unit direction at a planar interface. The surface
// normal must be oriented along propagation (incident.normal > 0). Throws
// TotalInternalReflection when n1*sin(theta1)/n2 > 1.
Vec3 refract_direction(const Vec3& incident, const Vec3& surface_normal,
                       double n1, double n2);

// Forward intersection of a ray with the plane {x : normal.x = offset}.
// Throws NoForwardIntersection for parallel rays or intersections at t <= 0.
Vec3 intersect_ray_plane(const Ray& ray, const Vec3& normal, double offset);

// Refracts an air-side ray through both glass surfaces and returns the
// water-side ray with origin on the outer surface.
Ray trace_through_port(const Ray& ray_air, const PortPlane& port,
                       const MediaIndices& media);

// Points of closest approach between two forward half-lines. Throws
// DegenerateRays for (near-)parallel rays and BehindCamera when a
// closest-approach parameter is negative.
ClosestPointPair closest_point_pair(const Ray& ray_a, const Ray& ray_b);

}  // namespace uws
