// Copyright 2026 the uwstereo authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numbers>
#include <random>

#include <doctest.h>

#include "geometry.hpp"

using namespace uws;

namespace {

constexpr double kPi = std::numbers::pi;

Vec3 direction_at_angle(double theta) {
  // Unit direction in the x-z plane, theta off the +z axis.
  return Vec3(std::sin(theta), 0.0, std::cos(theta));
}

double angle_to_normal(const Vec3& d, const Vec3& n) {
  return std::acos(std::clamp(d.dot(n), -1.0, 1.0));
}

}  // namespace

TEST_CASE("refract_direction at normal incidence is the identity") {
  const Vec3 n = Vec3::UnitZ();
  const Vec3 out = refract_direction(n, n, 1.0, 1.7);
  CHECK((out - n).norm() < 1e-15);
}

TEST_CASE("refract_direction with matched indices is the identity") {
  const Vec3 d = Vec3(0.3, -0.4, 0.8).normalized();
  const Vec3 out = refract_direction(d, Vec3::UnitZ(), 1.33, 1.33);
  CHECK((out - d).norm() < 1e-15);
}

TEST_CASE("refract_direction reproduces Snell's law at 30 degrees") {
  // Oracle: theta2 = asin(n1 sin(theta1) / n2) evaluated directly.
  const double theta1 = 30.0 * kPi / 180.0;
  const double theta2 = std::asin(1.0 * std::sin(theta1) / 1.5);
  CHECK(theta2 == doctest::Approx(19.471220634490695 * kPi / 180.0).epsilon(1e-12));

  const Vec3 out =
      refract_direction(direction_at_angle(theta1), Vec3::UnitZ(), 1.0, 1.5);
  CHECK(angle_to_normal(out, Vec3::UnitZ()) == doctest::Approx(theta2).epsilon(1e-14));
}

TEST_CASE("refract_direction reports total internal reflection") {
  // n1 sin(80 deg) / n2 = 1.49*0.9848/1.33 > 1.
  const double theta1 = 80.0 * kPi / 180.0;
  CHECK(1.49 * std::sin(theta1) / 1.33 > 1.0);
  CHECK_THROWS_AS(
      refract_direction(direction_at_angle(theta1), Vec3::UnitZ(), 1.49, 1.33),
      Error);
  try {
    refract_direction(direction_at_angle(theta1), Vec3::UnitZ(), 1.49, 1.33);
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::TotalInternalReflection);
  }
}

TEST_CASE("refract_direction properties over random incidences") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> angle(0.0, 0.95 * kPi / 2.0);
  std::uniform_real_distribution<double> index(1.0, 1.8);
  std::uniform_real_distribution<double> azimuth(0.0, 2.0 * kPi);
  for (int i = 0; i < 2000; ++i) {
    const double theta1 = angle(rng);
    const double phi = azimuth(rng);
    const double n1 = index(rng);
    const double n2 = index(rng);
    const Vec3 incident(std::sin(theta1) * std::cos(phi),
                        std::sin(theta1) * std::sin(phi), std::cos(theta1));
    if (n1 * std::sin(theta1) / n2 >= 0.999) continue;
    const Vec3 out = refract_direction(incident, Vec3::UnitZ(), n1, n2);

    CHECK(std::abs(out.norm() - 1.0) < 1e-14);
    // Snell residual.
    const double sin1 = incident.head<2>().norm();
    const double sin2 = out.head<2>().norm();
    CHECK(std::abs(n1 * sin1 - n2 * sin2) < 1e-12);
    // Coplanarity of incident, refracted, normal.
    Mat3 m;
    m.col(0) = incident;
    m.col(1) = out;
    m.col(2) = Vec3::UnitZ();
    CHECK(std::abs(m.determinant()) < 1e-12);
    // Continuity toward normal incidence handled by the small-angle case.
    const Vec3 near_normal = direction_at_angle(1e-9);
    const Vec3 out_nn = refract_direction(near_normal, Vec3::UnitZ(), n1, n2);
    CHECK((out_nn - Vec3::UnitZ()).norm() < 1e-8);
  }
}

TEST_CASE("intersect_ray_plane basics") {
  const Ray ray(Vec3::Zero(), Vec3::UnitZ(), 1.0);
  CHECK((intersect_ray_plane(ray, Vec3::UnitZ(), 2.0) - Vec3(0, 0, 2)).norm() <
        1e-15);

  const Ray behind(Vec3(1, 1, 0), -Vec3::UnitZ(), 1.0);
  CHECK_THROWS_AS(intersect_ray_plane(behind, Vec3::UnitZ(), 2.0), Error);

  // Oracle: t = 3*sqrt(2), point = t * (1/sqrt2, 0, 1/sqrt2).
  const double s = 1.0 / std::sqrt(2.0);
  const Ray diag(Vec3::Zero(), Vec3(s, 0, s), 1.0);
  const Vec3 hit = intersect_ray_plane(diag, Vec3::UnitZ(), 3.0);
  CHECK((hit - Vec3(3, 0, 3)).norm() < 1e-12);
  CHECK(std::abs(Vec3::UnitZ().dot(hit) - 3.0) < 1e-12 * 4.0);
}

TEST_CASE("trace_through_port at normal incidence shifts to outer plane") {
  const PortPlane port(Vec3::UnitZ(), 0.05, 0.01);
  const MediaIndices media(1.0, 1.49, 1.33);
  const Ray ray(Vec3::Zero(), Vec3::UnitZ(), 1.0);
  const Ray out = trace_through_port(ray, port, media);
  CHECK((out.direction - Vec3::UnitZ()).norm() < 1e-15);
  CHECK((out.origin - Vec3(0, 0, 0.06)).norm() < 1e-15);
  CHECK(out.medium_index == doctest::Approx(1.33));
}

TEST_CASE("trace_through_port with unit indices is a pure translation") {
  const PortPlane port(Vec3::UnitZ(), 0.05, 0.01);
  const MediaIndices media(1.0, 1.0, 1.0);
  const Vec3 d = Vec3(0.2, -0.1, 0.97).normalized();
  const Ray out = trace_through_port(Ray(Vec3::Zero(), d, 1.0), port, media);
  CHECK((out.direction - d).norm() < 1e-15);
}

TEST_CASE("trace_through_port matches the hand-chained two-interface oracle") {
  // Oracle: explicit trig chain for a 20-degree ray through z-normal glass,
  // n = (1.0, 1.49, 1.33), inner z = 0.05 m, thickness 0.01 m.
  const double theta_air = 20.0 * kPi / 180.0;
  const double theta_glass = std::asin(std::sin(theta_air) / 1.49);
  const double theta_water = std::asin(std::sin(theta_air) / 1.33);
  const double lateral =
      0.05 * std::tan(theta_air) + 0.01 * std::tan(theta_glass);

  const PortPlane port(Vec3::UnitZ(), 0.05, 0.01);
  const MediaIndices media(1.0, 1.49, 1.33);
  const Ray ray(Vec3::Zero(), direction_at_angle(theta_air), 1.0);
  const Ray out = trace_through_port(ray, port, media);

  CHECK(angle_to_normal(out.direction, Vec3::UnitZ()) ==
        doctest::Approx(theta_water).epsilon(1e-13));
  CHECK(theta_water == doctest::Approx(14.901494650129402 * kPi / 180.0));
  CHECK(out.origin.z() == doctest::Approx(0.06).epsilon(1e-14));
  CHECK(out.origin.x() == doctest::Approx(lateral).epsilon(1e-12));
  CHECK(out.origin.y() == doctest::Approx(0.0));
}

TEST_CASE("trace_through_port is reversible") {
  const PortPlane port(Vec3(0.1, -0.2, 1.0).normalized(), 0.04, 0.012);
  const MediaIndices media(1.0, 1.52, 1.34);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-0.45, 0.45);
  for (int i = 0; i < 500; ++i) {
    Vec3 d(u(rng), u(rng), 1.0);
    d.normalize();
    if (!(d.dot(port.normal) > 0.2)) continue;
    const Ray forward = trace_through_port(Ray(Vec3::Zero(), d, 1.0), port, media);

    // Walk the water ray forward a little, then trace back through the
    // mirrored port with the media order swapped.
    const Ray back_in(forward.origin + 0.5 * forward.direction,
                      -forward.direction, media.n_water);
    const PortPlane back_port(-port.normal, -(port.inner_offset + port.thickness),
                              port.thickness);
    const MediaIndices back_media(media.n_water, media.n_glass, media.n_air);
    const Ray recovered = trace_through_port(back_in, back_port, back_media);
    CHECK((recovered.direction + d).norm() < 1e-10);
  }
}

TEST_CASE("trace_through_port segments stay coplanar with the normal") {
  const PortPlane port(Vec3(0.0, std::sin(0.3), std::cos(0.3)), 0.05, 0.01);
  const MediaIndices media(1.0, 1.49, 1.33);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-0.4, 0.4);
  for (int i = 0; i < 500; ++i) {
    Vec3 d(u(rng), u(rng), 1.0);
    d.normalize();
    if (!(d.dot(port.normal) > 0.3)) continue;
    const Ray out = trace_through_port(Ray(Vec3::Zero(), d, 1.0), port, media);
    Mat3 m;
    m.col(0) = d;
    m.col(1) = out.direction;
    m.col(2) = port.normal;
    CHECK(std::abs(m.determinant()) < 1e-12);
  }
}

TEST_CASE("closest_point_pair of intersecting rays has zero gap") {
  const Vec3 target(1, 2, 3);
  const Vec3 o1(0, 0, 0), o2(5, 0, 1);
  const Ray a(o1, (target - o1).normalized(), 1.0);
  const Ray b(o2, (target - o2).normalized(), 1.0);
  const ClosestPointPair cp = closest_point_pair(a, b);
  CHECK((cp.midpoint - target).norm() < 1e-12);
  CHECK(cp.gap < 1e-12);
}

TEST_CASE("closest_point_pair matches the closed-form skew solution") {
  // Oracle: ray a along +x through (0,0,0), ray b along +y through (0,0,1);
  // the common perpendicular is the z segment between (0,0,0) and (0,0,1).
  const Ray a(Vec3(-2, 0, 0), Vec3::UnitX(), 1.0);
  const Ray b(Vec3(0, -3, 1), Vec3::UnitY(), 1.0);
  const ClosestPointPair cp = closest_point_pair(a, b);
  CHECK((cp.point_a - Vec3(0, 0, 0)).norm() < 1e-14);
  CHECK((cp.point_b - Vec3(0, 0, 1)).norm() < 1e-14);
  CHECK(cp.gap == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(cp.midpoint.z() == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("closest_point_pair rejects parallel rays and backward solutions") {
  const Ray a(Vec3(0, 0, 0), Vec3::UnitX(), 1.0);
  const Ray b(Vec3(0, 1, 0), Vec3::UnitX(), 1.0);
  CHECK_THROWS_AS(closest_point_pair(a, b), Error);

  // Closest approach behind ray a's origin.
  const Ray c(Vec3(0, 0, 0), Vec3::UnitX(), 1.0);
  const Ray d(Vec3(-5, -1, 0), Vec3::UnitY(), 1.0);
  try {
    closest_point_pair(c, d);
    CHECK(false);
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::BehindCamera);
  }
}

TEST_CASE("closest_point_pair is exactly symmetric") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const Vec3 o1(u(rng), u(rng), u(rng));
    const Vec3 o2(u(rng) + 2.0, u(rng), u(rng));
    Vec3 d1(u(rng), u(rng), 1.0);
    Vec3 d2(u(rng), u(rng), 1.0);
    d1.normalize();
    d2.normalize();
    ClosestPointPair ab, ba;
    try {
      ab = closest_point_pair(Ray(o1, d1, 1.0), Ray(o2, d2, 1.0));
      ba = closest_point_pair(Ray(o2, d2, 1.0), Ray(o1, d1, 1.0));
    } catch (const Error&) {
      continue;
    }
    CHECK((ab.point_a - ba.point_b).norm() == 0.0);
    CHECK((ab.point_b - ba.point_a).norm() == 0.0);
    CHECK((ab.midpoint - ba.midpoint).norm() == 0.0);
    CHECK(ab.gap == ba.gap);
  }
}

TEST_CASE("constructor validation") {
  CHECK_THROWS_AS(Ray(Vec3::Zero(), Vec3(1, 1, 0), 1.0), Error);
  CHECK_THROWS_AS(Ray(Vec3::Zero(), Vec3::UnitZ(), 0.9), Error);
  CHECK_THROWS_AS(PortPlane(Vec3::UnitZ(), 0.0, 0.0), Error);
  CHECK_THROWS_AS(MediaIndices(1.0, 2.5, 1.33), Error);
  CHECK_THROWS_AS(MediaIndices(0.9, 1.5, 1.33), Error);
}
