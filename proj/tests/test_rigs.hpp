// Copyright 2026 the uwstereo authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <numbers>

#include <Eigen/Geometry>

#include "rig.hpp"
#include "simulator.hpp"

namespace uws::testing {

// Standard tilted test rig: 10 degree port tilt about x, cameras ~0.05 m
// behind the inner glass surface, 0.01 m glass, n = (1.0, 1.49, 1.33).
// World frame = left camera frame; baseline 0.18 m along +x. Distortion-free
// so that the equal-index reduction gives exactly straight epipolar lines.
inline StereoRig standard_rig(double n_air = 1.0, double n_glass = 1.49,
                              double n_water = 1.33) {
  const CameraIntrinsics intr(500.0, 500.0, 160.0, 120.0, 0.0, 0.0, 320, 240);
  RigCamera left;
  left.intrinsics = intr;
  left.pose = CameraPose(Mat3::Identity(), Vec3::Zero());
  RigCamera right;
  right.intrinsics = intr;
  right.pose = CameraPose(Mat3::Identity(), Vec3(-0.18, 0.0, 0.0));

  const double tilt = 10.0 * std::numbers::pi / 180.0;
  const Vec3 normal(0.0, std::sin(tilt), std::cos(tilt));
  const PortPlane port(normal, 0.05, 0.01);
  return StereoRig(left, right, port, MediaIndices(n_air, n_glass, n_water),
                   IndexModel::defaults());
}

// Classical rectified in-air rig: identical distortion-free intrinsics,
// pure-x baseline, identity rotations, untilted port, all indices 1.
inline StereoRig rectified_air_rig() {
  const CameraIntrinsics intr(400.0, 400.0, 160.0, 120.0, 0.0, 0.0, 320, 240);
  RigCamera left;
  left.intrinsics = intr;
  left.pose = CameraPose(Mat3::Identity(), Vec3::Zero());
  RigCamera right;
  right.intrinsics = intr;
  right.pose = CameraPose(Mat3::Identity(), Vec3(-0.12, 0.0, 0.0));
  const PortPlane port(Vec3::UnitZ(), 0.05, 0.01);
  return StereoRig(left, right, port, MediaIndices(1.0, 1.0, 1.0),
                   IndexModel::defaults());
}

// Standard rig geometry with a mild radial distortion on both cameras.
inline StereoRig distorted_rig() {
  StereoRig rig = standard_rig();
  const CameraIntrinsics intr(500.0, 500.0, 160.0, 120.0, -0.08, 0.01, 320,
                              240);
  rig.left.intrinsics = intr;
  rig.right.intrinsics = intr;
  return rig;
}

// Fronto-parallel textured plane facing the cameras at the given depth.
inline SceneSpec plane_scene(double depth_m, double extent_m = 1.6) {
  SceneSpec scene;
  scene.kind = SceneKind::TexturedPlane;
  scene.plane_pose.rotation = Mat3::Identity();
  scene.plane_pose.translation = Vec3(0.09, 0.0, depth_m);
  scene.extent_m = extent_m;
  return scene;
}

}  // namespace uws::testing
