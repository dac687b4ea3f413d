// Copyright 2026 the uwstereo authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include <Eigen/Dense>

#include "projection.hpp"

namespace uws {

struct CornerObservation {
  int view_id = 0;
  CameraId camera = CameraId::Left;
  Vec3 board_point = Vec3::Zero();  // board frame, z = 0
  Vec2 pixel = Vec2::Zero();
};

// Which housing/water parameters the solver may move. In-air intrinsics are
// always held fixed.
struct FreeParams {
  bool port_offset = false;
  bool port_tilt = false;  // 2 rotation parameters on the port normal
  bool thickness = false;
  bool n_water = false;
  bool board_poses = false;  // 6 per view

  int count(int view_count) const {
    return (port_offset ? 1 : 0) + (port_tilt ? 2 : 0) + (thickness ? 1 : 0) +
           (n_water ? 1 : 0) + (board_poses ? 6 * view_count : 0);
  }
};

struct CalibrationProblem {
  StereoRig rig0;
  std::vector<CornerObservation> observations;
  std::vector<PlanePose> board_poses0;  // indexed by view_id
  FreeParams free_params;
};

struct CalibrationOptions {
  int max_iters = 100;
  double gradient_tol = 1e-10;
  double step_tol = 1e-12;
  double initial_damping = 1e-3;
};

struct CalibrationReport {
  StereoRig rig;
  std::vector<PlanePose> board_poses;
  double rms_px = 0.0;
  double initial_rms_px = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> per_parameter_sigma;
};

// Stacked 2-vector reprojection residuals (projected minus observed), in
// observation order.
Eigen::VectorXd reprojection_residuals(
    const StereoRig& rig, const std::vector<PlanePose>& board_poses,
    const std::vector<CornerObservation>& observations);

// Damped Gauss-Newton over the free housing parameters and board poses, with
// central finite-difference Jacobians and local rotation increments.
CalibrationReport calibrate(const CalibrationProblem& problem,
                            const CalibrationOptions& options = {});

}  // namespace uws
