// Copyright 2026 the uwstereo authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "calibration.hpp"
#include "image.hpp"
#include "projection.hpp"
#include "rng.hpp"

namespace uws {

enum class SceneKind { PointGrid, TexturedPlane, Checkerboard };

// Seeded multi-octave value noise sampled on the target plane.
struct TextureSpec {
  std::uint64_t seed = 7;
  int octaves = 4;
  double base_cell_m = 0.08;  // lattice cell of the coarsest octave
  double contrast = 1.5;
};

struct SceneSpec {
  SceneKind kind = SceneKind::TexturedPlane;
  PlanePose plane_pose;       // target-plane frame (z = 0) -> world
  double extent_m = 1.5;      // square target side length
  TextureSpec texture;
  double checker_square_m = 0.1;
  int grid_rows = 8;
  int grid_cols = 10;
  double grid_spacing_m = 0.05;
};

struct NoiseSpec {
  double pixel_sigma = 0.0;      // px, corner-observation noise
  double intensity_sigma = 0.0;  // [0,1] image noise
  std::uint64_t seed = 0;
};

struct RenderedPoint {
  Vec3 point_world = Vec3::Zero();
  Vec2 pixel_left = Vec2::Zero();
  Vec2 pixel_right = Vec2::Zero();
  bool visible_left = false;
  bool visible_right = false;
};

struct TruthMatch {
  Vec2 pixel = Vec2::Zero();  // right-image correspondence of a left pixel
  bool valid = false;
};

struct StereoPairTruth {
  GrayImage left;
  GrayImage right;
  DepthMap truth_depth;                 // left-pixel true depth
  std::vector<TruthMatch> truth_match;  // row-major over left pixels
};

// Procedural texture value in [0, 1] at plane-local coordinates.
double sample_texture(const TextureSpec& spec, double x, double y);

// Forward-projects the scene's point grid into both cameras.
std::vector<RenderedPoint> render_points(const StereoRig& rig,
                                         const SceneSpec& scene);

// Inverse rendering through the exact refractive model: per output pixel the
// water ray is intersected with the target plane, the texture sampled at the
// hit, and the true depth plus the true right-image correspondence recorded.
StereoPairTruth render_stereo_pair(const StereoRig& rig,
                                   const SceneSpec& scene,
                                   const NoiseSpec& noise);

// Checkerboard-corner observations over several board poses, optionally with
// seeded pixel noise; the ground-truth input for calibration tests.
std::vector<CornerObservation> synthesize_corner_observations(
    const StereoRig& rig, const std::vector<PlanePose>& board_poses,
    int rows, int cols, double spacing_m, const NoiseSpec& noise);

}  // namespace uws
