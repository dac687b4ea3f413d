// Copyright 2026 the uwstereo authors
// SPDX-License-Identifier: Apache-2.0

#include "rig.hpp"

#include <cmath>
#include <sstream>

namespace uws {

namespace {

void require_range(double value, double lo, double hi, const char* what) {
  if (!(value >= lo && value <= hi)) {
    std::ostringstream oss;
    oss << what << " = " << value << " outside [" << lo << ", " << hi << "]";
    throw Error(ErrorCode::InvalidArgument, oss.str());
  }
}

}  // namespace

EnvironmentSample::EnvironmentSample(double temperature, double salinity,
                                     double depth, double wavelength)
    : temperature_c(temperature), salinity_psu(salinity), depth_m(depth),
      wavelength_nm(wavelength) {
  require_range(temperature_c, -2.0, 40.0, "temperature (degC)");
  require_range(salinity_psu, 0.0, 45.0, "salinity (PSU)");
  require_range(depth_m, 0.0, 11000.0, "depth (m)");
  require_range(wavelength_nm, 400.0, 700.0, "wavelength (nm)");
}

IndexModel IndexModel::defaults() {
  IndexModel m;
  m.a0 = 1.31405;
  m.sal = 1.779e-4;
  m.sal_t = -1.05e-6;
  m.sal_t2 = 1.6e-8;
  m.t2 = -2.02e-6;
  m.inv_lambda = 15.868;
  m.sal_inv_lambda = 0.01155;
  m.t_inv_lambda = -0.00423;
  m.inv_lambda2 = -4382.0;
  m.inv_lambda3 = 1.1455e6;
  m.depth_coeff = 1.45e-6;
  return m;
}

IndexModel IndexModel::constant(double n) {
  IndexModel m;
  m.a0 = n;
  return m;
}

double water_refractive_index(const EnvironmentSample& env,
                              const IndexModel& model) {
  const double t = env.temperature_c;
  const double s = env.salinity_psu;
  const double lam = env.wavelength_nm;
  const double n = model.a0 + s * (model.sal + t * (model.sal_t + t * model.sal_t2))
      + model.t2 * t * t
      + (model.inv_lambda + model.sal_inv_lambda * s + model.t_inv_lambda * t) / lam
      + model.inv_lambda2 / (lam * lam) + model.inv_lambda3 / (lam * lam * lam)
      + model.depth_coeff * env.depth_m;
  if (!(n > 1.30 && n < 1.40)) {
    std::ostringstream oss;
    oss << "computed water index " << n << " outside (1.30, 1.40)";
    throw Error(ErrorCode::IndexOutOfPhysicalRange, oss.str());
  }
  return n;
}

StereoRig::StereoRig(const RigCamera& left_cam, const RigCamera& right_cam,
                     const PortPlane& port_plane,
                     const MediaIndices& media_indices, const IndexModel& model)
    : left(left_cam), right(right_cam), port(port_plane),
      media(media_indices), index_model(model) {
  validate();
}

void StereoRig::validate() const {
  for (const RigCamera* cam : {&left, &right}) {
    const Vec3 center = cam->pose.center();
    if (!(port.normal.dot(center) < port.inner_offset - 1e-6)) {
      std::ostringstream oss;
      oss << "camera center (" << center.transpose()
          << ") is not on the air side of the port";
      throw Error(ErrorCode::InvalidArgument, oss.str());
    }
    if (!(cam->pose.optical_axis_world().dot(port.normal) > 0.0)) {
      throw Error(ErrorCode::InvalidArgument,
                  "camera optical axis does not point through the port");
    }
  }
}

StereoRig apply_environment(const StereoRig& rig,
                            const EnvironmentSample& env) {
  StereoRig out = rig;
  out.media.n_water = water_refractive_index(env, rig.index_model);
  return out;
}

}  // namespace uws
