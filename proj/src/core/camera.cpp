// Copyright 2026 the uwstereo authors
// SPDX-License-Identifier: Apache-2.0

#include "camera.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace uws {

namespace {

// Largest distorted normalized radius occurring on the image border.
double max_border_radius(const CameraIntrinsics& intr) {
  double r_max = 0.0;
  auto consider = [&](double u, double v) {
    const double xn = (u - intr.cx) / intr.fx;
    const double yn = (v - intr.cy) / intr.fy;
    r_max = std::max(r_max, std::hypot(xn, yn));
  };
  const int w = intr.width, h = intr.height;
  for (int u = 0; u < w; ++u) {
    consider(u, 0.0);
    consider(u, h - 1.0);
  }
  for (int v = 0; v < h; ++v) {
    consider(0.0, v);
    consider(w - 1.0, v);
  }
  return r_max;
}

}  // namespace

CameraIntrinsics::CameraIntrinsics(double fx_, double fy_, double cx_,
                                   double cy_, double k1_, double k2_,
                                   int width_, int height_)
    : fx(fx_), fy(fy_), cx(cx_), cy(cy_), k1(k1_), k2(k2_),
      width(width_), height(height_) {
  if (!(fx > 0.0 && fy > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "focal lengths must be positive");
  }
  if (!(width > 0 && height > 0)) {
    throw Error(ErrorCode::InvalidArgument, "image size must be positive");
  }
  if (!(cx >= 0.0 && cx < width && cy >= 0.0 && cy < height)) {
    throw Error(ErrorCode::InvalidArgument,
                "principal point must lie inside the image");
  }
  // The radial map r -> r*(1 + k1 r^2 + k2 r^4) must stay strictly increasing
  // on the range of radii the image can produce, otherwise distortion is not
  // invertible. Scan up to the undistorted radius that maps to the border.
  const double r_border = max_border_radius(*this);
  const double r_scan_end = 1.5 * r_border + 1e-6;
  const int steps = 2048;
  double reached = 0.0;
  for (int i = 1; i <= steps; ++i) {
    const double r = r_scan_end * i / steps;
    const double r2 = r * r;
    const double slope = 1.0 + r2 * (3.0 * k1 + 5.0 * k2 * r2);
    if (slope <= 0.0 && reached <= r_border) {
      std::ostringstream oss;
      oss << "radial distortion not invertible on the image domain "
          << "(non-monotone at normalized radius " << r << ")";
      throw Error(ErrorCode::InvalidArgument, oss.str());
    }
    reached = std::max(reached, r * radial_gain(r2));
    if (reached > r_border) break;
  }
}

Vec2 CameraIntrinsics::undistort_normalized(const Vec2& xd) const {
  Vec2 xn = xd;
  for (int iter = 0; iter < 50; ++iter) {
    const double gain = radial_gain(xn.squaredNorm());
    xn = xd / gain;
    if ((distort_normalized(xn) - xd).norm() < 1e-12) {
      return xn;
    }
  }
  throw Error(ErrorCode::DistortionInversionFailed,
              "fixed-point distortion inversion did not converge in 50 steps");
}

CameraPose::CameraPose(const Mat3& r, const Vec3& t)
    : rotation(r), translation(t) {
  if ((rotation.transpose() * rotation - Mat3::Identity()).norm() > 1e-10) {
    throw Error(ErrorCode::InvalidArgument, "rotation is not orthonormal");
  }
  if (std::abs(rotation.determinant() - 1.0) > 1e-10) {
    throw Error(ErrorCode::InvalidArgument, "rotation determinant is not +1");
  }
}

Vec2 project_camera_point(const CameraIntrinsics& intr, const Vec3& p_cam) {
  if (!(p_cam.z() > 1e-9)) {
    std::ostringstream oss;
    oss << "point at z_cam = " << p_cam.z();
    throw Error(ErrorCode::PointBehindCamera, oss.str());
  }
  const Vec2 xn(p_cam.x() / p_cam.z(), p_cam.y() / p_cam.z());
  const Vec2 xd = intr.distort_normalized(xn);
  return Vec2(intr.cx + intr.fx * xd.x(), intr.cy + intr.fy * xd.y());
}

Vec2 project_pinhole(const CameraIntrinsics& intr, const CameraPose& pose,
                     const Vec3& point_world) {
  return project_camera_point(intr, pose.to_camera(point_world));
}

Ray unproject_pinhole(const CameraIntrinsics& intr, const CameraPose& pose,
                      const Vec2& pixel, double n_air) {
  const Vec2 xd((pixel.x() - intr.cx) / intr.fx,
                (pixel.y() - intr.cy) / intr.fy);
  const Vec2 xn = intr.undistort_normalized(xd);
  const Vec3 dir_cam = Vec3(xn.x(), xn.y(), 1.0).normalized();
  Ray ray;
  ray.origin = pose.center();
  ray.direction = (pose.rotation.transpose() * dir_cam).normalized();
  ray.medium_index = n_air;
  return ray;
}

}  // namespace uws
