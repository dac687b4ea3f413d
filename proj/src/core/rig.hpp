// Copyright 2026 the uwstereo authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "camera.hpp"

namespace uws {

enum class CameraId { Left, Right };

inline CameraId other_camera(CameraId id) {
  return id == CameraId::Left ? CameraId::Right : CameraId::Left;
}

// Water conditions driving the refractive index. Construction rejects values
// outside the supported physical ranges.
struct EnvironmentSample {
  double temperature_c = 20.0;   // [-2, 40] degC
  double salinity_psu = 0.0;     // [0, 45] PSU
  double depth_m = 0.0;          // [0, 11000] m
  double wavelength_nm = 550.0;  // [400, 700] nm

  EnvironmentSample() = default;
  EnvironmentSample(double temperature, double salinity, double depth,
                    double wavelength);
};

// Coefficient table of the empirical water-index model
//   n = a0 + S*(sal + sal_t*T + sal_t2*T^2) + t2*T^2
//       + (inv_lambda + sal_inv_lambda*S + t_inv_lambda*T)/lambda
//       + inv_lambda2/lambda^2 + inv_lambda3/lambda^3
//       + depth_coeff*z
// with T in degC, S in PSU, lambda in nm, z in meters. The shipped defaults
// are the Quan-Fry seawater fit plus a first-order pressure slope; a learned
// model can be swapped in by loading different coefficients.
struct IndexModel {
  double a0 = 0.0;
  double sal = 0.0;
  double sal_t = 0.0;
  double sal_t2 = 0.0;
  double t2 = 0.0;
  double inv_lambda = 0.0;
  double sal_inv_lambda = 0.0;
  double t_inv_lambda = 0.0;
  double inv_lambda2 = 0.0;
  double inv_lambda3 = 0.0;
  double depth_coeff = 0.0;

  static IndexModel defaults();
  static IndexModel constant(double n);
};

// Evaluates the index model; the result is gated to (1.30, 1.40) and
// IndexOutOfPhysicalRange is thrown outside it (corrupt coefficients).
double water_refractive_index(const EnvironmentSample& env,
                              const IndexModel& model);

struct RigCamera {
  CameraIntrinsics intrinsics;
  CameraPose pose;
};

// Two pinhole cameras behind one shared flat port. Both camera centers must
// sit on the air side and both optical axes must point through the glass.
struct StereoRig {
  RigCamera left;
  RigCamera right;
  PortPlane port;
  MediaIndices media;
  IndexModel index_model;

  StereoRig() = default;
  StereoRig(const RigCamera& left_cam, const RigCamera& right_cam,
            const PortPlane& port_plane, const MediaIndices& media_indices,
            const IndexModel& model);

  void validate() const;

  const RigCamera& camera(CameraId id) const {
    return id == CameraId::Left ? left : right;
  }
};

// Returns a rig identical to the input except that media.n_water is replaced
// by the index-model evaluation for the sample. Pure; the input is unchanged.
StereoRig apply_environment(const StereoRig& rig, const EnvironmentSample& env);

}  // namespace uws
