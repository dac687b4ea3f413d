// Copyright 2026 the uwstereo authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "geometry.hpp"

namespace uws {

// Pinhole intrinsics with a two-term radial distortion model
// r' = r * (1 + k1 r^2 + k2 r^4) in normalized image coordinates.
struct CameraIntrinsics {
  double fx = 1.0, fy = 1.0;
  double cx = 0.0, cy = 0.0;
  double k1 = 0.0, k2 = 0.0;
  int width = 0, height = 0;

  CameraIntrinsics() = default;
  CameraIntrinsics(double fx_, double fy_, double cx_, double cy_, double k1_,
                   double k2_, int width_, int height_);

  bool pixel_in_bounds(const Vec2& px) const {
    return px.x() >= 0.0 && px.x() <= width - 1 && px.y() >= 0.0 &&
           px.y() <= height - 1;
  }

  // Radial gain 1 + k1 r^2 + k2 r^4 at squared normalized radius r2.
  double radial_gain(double r2) const {
    return 1.0 + r2 * (k1 + r2 * k2);
  }

  Vec2 distort_normalized(const Vec2& xn) const {
    return xn * radial_gain(xn.squaredNorm());
  }

  // Inverse of distort_normalized by fixed-point iteration; residual below
  // 1e-12 in normalized units or DistortionInversionFailed after 50 steps.
  Vec2 undistort_normalized(const Vec2& xd) const;
};

// World-to-camera rigid transform: x_cam = rotation * x_world + translation.
struct CameraPose {
  Mat3 rotation = Mat3::Identity();
  Vec3 translation = Vec3::Zero();

  CameraPose() = default;
  CameraPose(const Mat3& r, const Vec3& t);

  Vec3 center() const { return -rotation.transpose() * translation; }
  Vec3 optical_axis_world() const { return rotation.transpose() * Vec3::UnitZ(); }
  Vec3 to_camera(const Vec3& p_world) const {
    return rotation * p_world + translation;
  }
};

// Projects a camera-frame point; z_cam must exceed 1e-9.
Vec2 project_camera_point(const CameraIntrinsics& intr, const Vec3& p_cam);

Vec2 project_pinhole(const CameraIntrinsics& intr, const CameraPose& pose,
                     const Vec3& point_world);

// In-air camera ray through a pixel; inverse of project_pinhole.
Ray unproject_pinhole(const CameraIntrinsics& intr, const CameraPose& pose,
                      const Vec2& pixel, double n_air = 1.0);

}  // namespace uws
