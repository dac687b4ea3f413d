// Copyright 2026 the uwstereo authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "test_rigs.hpp"

using namespace uws;

TEST_CASE("environment sample range validation") {
  CHECK_NOTHROW(EnvironmentSample(20, 35, 100, 550));
  CHECK_THROWS_AS(EnvironmentSample(-10, 35, 100, 550), Error);
  CHECK_THROWS_AS(EnvironmentSample(20, 50, 100, 550), Error);
  CHECK_THROWS_AS(EnvironmentSample(20, 35, 12000, 550), Error);
  CHECK_THROWS_AS(EnvironmentSample(20, 35, 100, 300), Error);
}

TEST_CASE("constant index model returns the constant") {
  const IndexModel model = IndexModel::constant(1.333);
  CHECK(water_refractive_index(EnvironmentSample(5, 40, 9000, 410), model) ==
        doctest::Approx(1.333).epsilon(1e-15));
  CHECK(water_refractive_index(EnvironmentSample(30, 0, 0, 690), model) ==
        doctest::Approx(1.333).epsilon(1e-15));
}

TEST_CASE("default index model matches its published reference values") {
  // Frozen from a direct evaluation of the seawater fit: fresh water at
  // 20 degC / 589.3 nm gives the textbook 1.3330, S=35 seawater 1.3394.
  const IndexModel model = IndexModel::defaults();
  CHECK(water_refractive_index(EnvironmentSample(20, 0, 0, 589.3), model) ==
        doctest::Approx(1.3330044342769518).epsilon(1e-12));
  CHECK(water_refractive_index(EnvironmentSample(20, 35, 0, 589.3), model) ==
        doctest::Approx(1.3394059176470519).epsilon(1e-12));
  CHECK(water_refractive_index(EnvironmentSample(20, 0, 0, 589.0), model) ==
        doctest::Approx(1.333013776086627).epsilon(1e-12));
  // Spec-level sanity: within +-0.001 of 1.333 at the sodium line.
  CHECK(std::abs(water_refractive_index(EnvironmentSample(20, 0, 0, 589), model) -
                 1.333) < 1e-3);
}

TEST_CASE("default model is monotone in salinity and temperature") {
  const IndexModel model = IndexModel::defaults();
  for (double t : {10.0, 15.0, 20.0, 25.0, 30.0}) {
    for (double lam : {450.0, 550.0, 650.0}) {
      double prev = water_refractive_index(EnvironmentSample(t, 0, 0, lam), model);
      for (double s = 5; s <= 40; s += 5) {
        const double n =
            water_refractive_index(EnvironmentSample(t, s, 0, lam), model);
        CHECK(n > prev);
        prev = n;
      }
    }
  }
  for (double s : {0.0, 20.0, 40.0}) {
    for (double lam : {450.0, 550.0, 650.0}) {
      double prev =
          water_refractive_index(EnvironmentSample(10, s, 0, lam), model);
      for (double t = 12; t <= 30; t += 2) {
        const double n =
            water_refractive_index(EnvironmentSample(t, s, 0, lam), model);
        CHECK(n < prev);
        prev = n;
      }
    }
  }
}

TEST_CASE("depth raises the index linearly") {
  const IndexModel model = IndexModel::defaults();
  const double n0 = water_refractive_index(EnvironmentSample(10, 35, 0, 550), model);
  const double n500 =
      water_refractive_index(EnvironmentSample(10, 35, 500, 550), model);
  const double n1000 =
      water_refractive_index(EnvironmentSample(10, 35, 1000, 550), model);
  CHECK(n500 - n0 == doctest::Approx(500 * model.depth_coeff).epsilon(1e-9));
  CHECK(n1000 - n500 == doctest::Approx(n500 - n0).epsilon(1e-9));
}

TEST_CASE("corrupt coefficients trip the physical gate") {
  IndexModel model = IndexModel::constant(1.55);
  try {
    water_refractive_index(EnvironmentSample(), model);
    CHECK(false);
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::IndexOutOfPhysicalRange);
  }
}

TEST_CASE("apply_environment replaces only n_water and is idempotent") {
  const StereoRig rig = testing::standard_rig();
  const EnvironmentSample env(15, 30, 50, 532);
  const StereoRig updated = apply_environment(rig, env);

  CHECK(updated.media.n_water ==
        water_refractive_index(env, rig.index_model));
  CHECK(updated.media.n_air == rig.media.n_air);
  CHECK(updated.media.n_glass == rig.media.n_glass);
  CHECK(updated.port.inner_offset == rig.port.inner_offset);
  CHECK((updated.left.pose.rotation - rig.left.pose.rotation).norm() == 0.0);
  // Input rig unchanged.
  CHECK(rig.media.n_water == doctest::Approx(1.33));

  const StereoRig twice = apply_environment(updated, env);
  CHECK(twice.media.n_water == updated.media.n_water);
}

TEST_CASE("apply_environment with a constant table is a fixed point") {
  StereoRig rig = testing::standard_rig();
  rig.index_model = IndexModel::constant(rig.media.n_water);
  const StereoRig updated = apply_environment(rig, EnvironmentSample(3, 12, 900, 620));
  CHECK(updated.media.n_water == rig.media.n_water);
}

TEST_CASE("rig construction rejects a camera on the water side") {
  StereoRig rig = testing::standard_rig();
  RigCamera bad = rig.right;
  // Push the right camera beyond the inner surface.
  bad.pose = CameraPose(Mat3::Identity(), Vec3(0, 0, -0.2));
  CHECK_THROWS_AS(StereoRig(rig.left, bad, rig.port, rig.media,
                            rig.index_model),
                  Error);
}

TEST_CASE("rig construction rejects a camera looking away from the port") {
  StereoRig rig = testing::standard_rig();
  RigCamera turned = rig.right;
  Mat3 rot;
  rot = Eigen::AngleAxisd(std::numbers::pi, Vec3::UnitY());
  turned.pose = CameraPose(rot, rot * -Vec3(0.18, 0, 0));
  CHECK_THROWS_AS(StereoRig(rig.left, turned, rig.port, rig.media,
                            rig.index_model),
                  Error);
}
