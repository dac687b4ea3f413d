// Copyright 2026 the uwstereo authors
// SPDX-License-Identifier: Apache-2.0

#include <random>

#include <doctest.h>
#include <Eigen/Geometry>

#include "camera.hpp"

using namespace uws;

TEST_CASE("project_pinhole maps the optical axis to the principal point") {
  const CameraIntrinsics intr(500, 500, 320, 240, 0, 0, 640, 480);
  const CameraPose pose;
  for (double z : {0.5, 1.0, 7.5}) {
    const Vec2 px = project_pinhole(intr, pose, Vec3(0, 0, z));
    CHECK(px.x() == doctest::Approx(320.0).epsilon(1e-14));
    CHECK(px.y() == doctest::Approx(240.0).epsilon(1e-14));
  }
}

TEST_CASE("project_pinhole oracle: u = cx + fx*x/z") {
  const CameraIntrinsics intr(500, 500, 320, 320, 0, 0, 640, 640);
  const Vec2 px = project_pinhole(intr, CameraPose(), Vec3(0.1, 0, 1));
  CHECK(px.x() == doctest::Approx(370.0).epsilon(1e-14));
  CHECK(px.y() == doctest::Approx(320.0).epsilon(1e-14));
}

TEST_CASE("project_pinhole rejects points behind the camera") {
  const CameraIntrinsics intr(500, 500, 320, 240, 0, 0, 640, 480);
  try {
    project_pinhole(intr, CameraPose(), Vec3(0.1, 0.1, 0.0));
    CHECK(false);
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::PointBehindCamera);
  }
}

TEST_CASE("unproject_pinhole of the principal point is the optical axis") {
  const CameraIntrinsics intr(480, 500, 315, 245, -0.1, 0.02, 640, 480);
  const Ray ray = unproject_pinhole(intr, CameraPose(), Vec2(315, 245));
  CHECK((ray.direction - Vec3::UnitZ()).norm() < 1e-14);
  CHECK(ray.origin.norm() < 1e-15);
}

TEST_CASE("project/unproject round trip over the whole image") {
  const CameraIntrinsics intr(480, 500, 315, 245, -0.1, 0.02, 640, 480);
  Mat3 rot;
  rot = Eigen::AngleAxisd(0.2, Vec3(0.3, -1.0, 0.2).normalized());
  const CameraPose pose(rot, Vec3(0.05, -0.02, 0.3));
  for (double v = 0; v < 480; v += 37) {
    for (double u = 0; u < 640; u += 41) {
      const Ray ray = unproject_pinhole(intr, pose, Vec2(u, v));
      const Vec2 back = project_pinhole(intr, pose, ray.at(2.5));
      CHECK((back - Vec2(u, v)).norm() < 1e-9);
    }
  }
}

TEST_CASE("distortion inversion converges at the corner for k1=-0.2, k2=0.05") {
  const CameraIntrinsics intr(400, 400, 320, 240, -0.2, 0.05, 640, 480);
  const Vec2 corner(639, 479);
  const Ray ray = unproject_pinhole(intr, CameraPose(), corner);
  const Vec2 back = project_pinhole(intr, CameraPose(), ray.at(1.0));
  CHECK((back - corner).norm() < 1e-9);
}

TEST_CASE("intrinsics constructor rejects a non-invertible distortion") {
  // Strongly negative k1 folds the radial map back inside the image domain.
  CHECK_THROWS_AS(CameraIntrinsics(100, 100, 320, 240, -0.9, 0.0, 640, 480),
                  Error);
  CHECK_THROWS_AS(CameraIntrinsics(-5, 100, 320, 240, 0, 0, 640, 480), Error);
  CHECK_THROWS_AS(CameraIntrinsics(100, 100, 700, 240, 0, 0, 640, 480), Error);
}

TEST_CASE("camera pose validation and helpers") {
  CHECK_THROWS_AS(CameraPose(2.0 * Mat3::Identity(), Vec3::Zero()), Error);
  Mat3 rot;
  rot = Eigen::AngleAxisd(0.7, Vec3::UnitY());
  const CameraPose pose(rot, Vec3(1, 2, 3));
  CHECK((pose.to_camera(pose.center())).norm() < 1e-12);
  CHECK(pose.optical_axis_world().dot(rot.transpose() * Vec3::UnitZ()) ==
        doctest::Approx(1.0));
}
