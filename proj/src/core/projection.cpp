// Copyright 2026 the uwstereo authors
// SPDX-License-Identifier: Apache-2.0

#include "projection.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Cholesky>

namespace uws {

namespace {

// Orthonormal basis spanning the port plane.
void plane_basis(const Vec3& normal, Vec3& e1, Vec3& e2) {
  const Vec3 seed =
      std::abs(normal.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
  e1 = (seed - seed.dot(normal) * normal).normalized();
  e2 = normal.cross(e1);
}

// Plane coordinates are measured from the straight-line C->X intersections
// with each plane, so the solve starts at x = 0 and every per-iteration
// quantity stays small; the large constant offsets are folded into the three
// segment bases once.
struct FermatProblem {
  Vec3 camera_center;
  Vec3 target;
  Vec3 normal;
  Vec3 e1, e2;
  Vec3 inner_origin;   // straight-line hit on the inner plane
  Vec3 outer_origin;   // straight-line hit on the outer plane
  Vec3 base_cam;       // inner_origin - camera_center
  Vec3 base_mid;       // outer_origin - inner_origin
  Vec3 base_target;    // target - outer_origin
  double n_air, n_glass, n_water;

  Vec3 inner_point(const Eigen::Vector4d& x) const {
    return inner_origin + x[0] * e1 + x[1] * e2;
  }
  Vec3 outer_point(const Eigen::Vector4d& x) const {
    return outer_origin + x[2] * e1 + x[3] * e2;
  }

  double length(const Eigen::Vector4d& x) const {
    const Vec3 s1 = base_cam + x[0] * e1 + x[1] * e2;
    const Vec3 s2 = base_mid + (x[2] - x[0]) * e1 + (x[3] - x[1]) * e2;
    const Vec3 s3 = base_target - x[2] * e1 - x[3] * e2;
    return n_air * s1.norm() + n_glass * s2.norm() + n_water * s3.norm();
  }

  // Gradient and Hessian of the optical length in plane coordinates.
  void derivatives(const Eigen::Vector4d& x, Eigen::Vector4d& grad,
                   Eigen::Matrix4d& hess) const {
    const Vec3 s1 = base_cam + x[0] * e1 + x[1] * e2;
    const Vec3 s2 = base_mid + (x[2] - x[0]) * e1 + (x[3] - x[1]) * e2;
    const Vec3 s3 = base_target - x[2] * e1 - x[3] * e2;
    const double d1 = s1.norm(), d2 = s2.norm(), d3 = s3.norm();
    const Vec3 u1 = s1 / d1, u2 = s2 / d2, u3 = s3 / d3;

    auto proj = [&](const Vec3& u) {
      return Vec2(u.dot(e1), u.dot(e2));
    };
    const Vec2 q1 = proj(u1), q2 = proj(u2), q3 = proj(u3);

    grad[0] = n_air * q1.x() - n_glass * q2.x();
    grad[1] = n_air * q1.y() - n_glass * q2.y();
    grad[2] = n_glass * q2.x() - n_water * q3.x();
    grad[3] = n_glass * q2.y() - n_water * q3.y();

    // Per-segment curvature (I - u u^T)/d projected onto the plane basis.
    auto block = [&](const Vec2& q, double d, double n) {
      Eigen::Matrix2d m;
      m(0, 0) = 1.0 - q.x() * q.x();
      m(0, 1) = -q.x() * q.y();
      m(1, 0) = m(0, 1);
      m(1, 1) = 1.0 - q.y() * q.y();
      return Eigen::Matrix2d(n / d * m);
    };
    const Eigen::Matrix2d h1 = block(q1, d1, n_air);
    const Eigen::Matrix2d h2 = block(q2, d2, n_glass);
    const Eigen::Matrix2d h3 = block(q3, d3, n_water);

    hess.setZero();
    hess.block<2, 2>(0, 0) = h1 + h2;
    hess.block<2, 2>(0, 2) = -h2;
    hess.block<2, 2>(2, 0) = -h2;
    hess.block<2, 2>(2, 2) = h2 + h3;
  }
};

// Anchors the plane origins at the straight-line C->X intersections (exact
// solution when all indices are equal) and precomputes the segment bases.
void anchor_problem(FermatProblem& fp, double inner_offset,
                    double outer_offset) {
  const Vec3 d = fp.target - fp.camera_center;
  const double dn = d.dot(fp.normal);
  if (!(dn > 0.0)) {
    throw Error(ErrorCode::NoForwardIntersection,
                "camera-to-point segment does not cross the port");
  }
  const double c0 = fp.normal.dot(fp.camera_center);
  fp.inner_origin = fp.camera_center + ((inner_offset - c0) / dn) * d;
  fp.outer_origin = fp.camera_center + ((outer_offset - c0) / dn) * d;
  fp.base_cam = fp.inner_origin - fp.camera_center;
  fp.base_mid = fp.outer_origin - fp.inner_origin;
  fp.base_target = fp.target - fp.outer_origin;
}

}  // namespace

WaterRay back_project(const StereoRig& rig, CameraId camera,
                      const Vec2& pixel) {
  const RigCamera& cam = rig.camera(camera);
  if (!cam.intrinsics.pixel_in_bounds(pixel)) {
    std::ostringstream oss;
    oss << "pixel (" << pixel.x() << ", " << pixel.y() << ") out of bounds";
    throw Error(ErrorCode::OutOfBoundsPixel, oss.str());
  }
  const Ray air_ray =
      unproject_pinhole(cam.intrinsics, cam.pose, pixel, rig.media.n_air);
  WaterRay out;
  out.ray = trace_through_port(air_ray, rig.port, rig.media);
  out.source_camera = camera;
  out.source_pixel = pixel;
  return out;
}

Vec3 point_at_depth(const StereoRig& rig, CameraId camera, const Vec2& pixel,
                    double depth_z) {
  const WaterRay wr = back_project(rig, camera, pixel);
  const RigCamera& cam = rig.camera(camera);
  const Vec3 axis = cam.pose.optical_axis_world();
  const Vec3 center = cam.pose.center();
  const double axial_rate = wr.ray.direction.dot(axis);
  if (!(axial_rate > 1e-14)) {
    throw Error(ErrorCode::DepthNotReachable,
                "water ray does not advance along the optical axis");
  }
  const double axial_origin = (wr.ray.origin - center).dot(axis);
  const double t = (depth_z - axial_origin) / axial_rate;
  if (!(t >= 0.0)) {
    std::ostringstream oss;
    oss << "depth " << depth_z << " m lies before the water-ray origin";
    throw Error(ErrorCode::DepthNotReachable, oss.str());
  }
  return wr.ray.at(t);
}

ProjectedPixel forward_project_with_path(const StereoRig& rig, CameraId camera,
                                         const Vec3& point_world,
                                         FermatPath* path) {
  const RigCamera& cam = rig.camera(camera);
  const PortPlane& port = rig.port;
  if (!(port.normal.dot(point_world) > port.outer_offset())) {
    throw Error(ErrorCode::InvalidArgument,
                "point is not on the water side of the port");
  }

  FermatProblem fp;
  fp.camera_center = cam.pose.center();
  fp.target = point_world;
  fp.normal = port.normal;
  plane_basis(port.normal, fp.e1, fp.e2);
  fp.n_air = rig.media.n_air;
  fp.n_glass = rig.media.n_glass;
  fp.n_water = rig.media.n_water;
  anchor_problem(fp, port.inner_offset, port.outer_offset());

  Eigen::Vector4d x = Eigen::Vector4d::Zero();
  double cost = fp.length(x);
  double damping = 0.0;
  Eigen::Vector4d grad;
  Eigen::Matrix4d hess;
  fp.derivatives(x, grad, hess);
  double grad_norm = grad.norm();
  int iterations = 0;
  bool converged = grad_norm < 1e-12 * cost;
  for (; iterations < 100 && !converged; ++iterations) {
    bool stepped = false;
    for (int attempt = 0; attempt < 40; ++attempt) {
      Eigen::Matrix4d damped = hess;
      damped.diagonal().array() += damping;
      const Eigen::LDLT<Eigen::Matrix4d> ldlt(damped);
      const Eigen::Vector4d step = ldlt.solve(-grad);
      const Eigen::Vector4d trial = x + step;
      const double trial_cost = fp.length(trial);
      if (!std::isfinite(trial_cost)) {
        damping = damping == 0.0 ? 1e-8 : damping * 10.0;
        continue;
      }
      Eigen::Vector4d trial_grad;
      Eigen::Matrix4d trial_hess;
      fp.derivatives(trial, trial_grad, trial_hess);
      const double trial_grad_norm = trial_grad.norm();
      // Near the optimum the cost change falls below double resolution;
      // gradient decrease is the reliable progress signal there.
      if (trial_cost < cost || trial_grad_norm < grad_norm) {
        x = trial;
        cost = std::min(trial_cost, cost);
        grad = trial_grad;
        hess = trial_hess;
        grad_norm = trial_grad_norm;
        damping /= 3.0;
        stepped = true;
        break;
      }
      damping = damping == 0.0 ? 1e-8 : damping * 10.0;
    }
    if (grad_norm < 1e-12 * cost) {
      converged = true;
      break;
    }
    if (!stepped) break;
  }
  if (!converged && !(grad_norm < 1e-12 * cost)) {
    std::ostringstream oss;
    oss << "Fermat solve stalled after " << iterations
        << " iterations, |grad| = " << grad_norm;
#ifdef UWS_FERMAT_STALL_DUMP
    fprintf(stderr,
            "FERMAT_STALL C=(%.17g,%.17g,%.17g) X=(%.17g,%.17g,%.17g) "
            "n=(%.17g,%.17g,%.17g) off=%.17g thick=%.17g media=(%.17g,%.17g,%.17g)\n",
            fp.camera_center.x(), fp.camera_center.y(), fp.camera_center.z(),
            point_world.x(), point_world.y(), point_world.z(),
            port.normal.x(), port.normal.y(), port.normal.z(),
            port.inner_offset, port.thickness, fp.n_air, fp.n_glass,
            fp.n_water);
#endif
    throw Error(ErrorCode::ConvergenceFailure, oss.str());
  }

  const Vec3 p1 = fp.inner_point(x);
  if (path != nullptr) {
    path->inner_point = p1;
    path->outer_point = fp.outer_point(x);
    path->optical_length = cost;
    path->iterations = iterations;
  }

  const Vec3 dir_air = (p1 - fp.camera_center).normalized();
  const Vec3 dir_cam = cam.pose.rotation * dir_air;
  if (!(dir_cam.z() > 1e-12)) {
    throw Error(ErrorCode::PointBehindCamera,
                "refracted ray leaves the camera backwards");
  }
  ProjectedPixel out;
  out.pixel = project_camera_point(cam.intrinsics, dir_cam);
  out.in_image = cam.intrinsics.pixel_in_bounds(out.pixel);
  return out;
}

ProjectedPixel forward_project(const StereoRig& rig, CameraId camera,
                               const Vec3& point_world) {
  return forward_project_with_path(rig, camera, point_world, nullptr);
}

}  // namespace uws
