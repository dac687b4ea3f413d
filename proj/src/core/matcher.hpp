// Copyright 2026 the uwstereo authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "image.hpp"
#include "search_domain.hpp"

namespace uws {

enum class CostMetric { Zncc, Sad };

enum class MatchStatus { Ok, NoDomain, LowScore, Inconsistent };

struct MatchResult {
  Vec2 source_pixel = Vec2::Zero();
  Vec2 matched_pixel = Vec2::Zero();       // subpixel-refined
  Eigen::Vector2i matched_int = {0, 0};    // winning integer position
  double score = 0.0;
  MatchStatus status = MatchStatus::NoDomain;
};

struct MatchParams {
  int window = 11;
  CostMetric metric = CostMetric::Zncc;
  int locus_samples = 32;     // K, depth samples per epipolar locus
  int dilation_radius = 2;    // r, Chebyshev dilation of the locus band
  double accept_threshold = 0.7;  // ZNCC lower bound / SAD upper bound
  double lr_max_px = 1.0;     // left-right consistency slack
  int threads = 1;
};

struct CloudPoint {
  Vec3 position = Vec3::Zero();
  double intensity = 0.0;
  double gap = 0.0;
};

struct PointCloud {
  std::vector<CloudPoint> points;
};

// Patch similarity between two w x w windows centered on integer pixels.
// ZNCC is in [-1, 1] (higher better, zero-variance windows score 0); SAD is
// the mean absolute difference (lower better).
double patch_cost(const GrayImage& left, const GrayImage& right,
                  const Eigen::Vector2i& p_left,
                  const Eigen::Vector2i& p_right, int window,
                  CostMetric metric);

// Best-scoring domain pixel with separable parabola subpixel refinement.
MatchResult match_pixel(const GrayImage& left, const GrayImage& right,
                        const Eigen::Vector2i& p_left,
                        const SearchDomain& domain, int window,
                        CostMetric metric, double accept_threshold);

// Triangulates a left/right pixel pair through the refractive model; returns
// the midpoint of the closest approach between the two water rays and the
// residual gap in meters.
std::pair<Vec3, double> triangulate_match(const StereoRig& rig,
                                          const Vec2& p_left,
                                          const Vec2& p_right);

// Dense domain-constrained matching with left-right consistency and
// refracted-ray triangulation. Results are deterministic and independent of
// params.threads.
std::pair<DepthMap, std::vector<MatchResult>> match_dense(
    const StereoRig& rig, const GrayImage& left, const GrayImage& right,
    double z_min, double z_max, const MatchParams& params);

// One cloud point per valid depth pixel, carrying the pixel intensity and the
// stored triangulation gap.
PointCloud to_point_cloud(const StereoRig& rig, const DepthMap& depth_map,
                          const GrayImage& left);

}  // namespace uws
