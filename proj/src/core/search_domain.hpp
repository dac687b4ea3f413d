// Copyright 2026 the uwstereo authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "projection.hpp"

namespace uws {

struct LocusSample {
  double depth_z = 0.0;
  Vec2 pixel = Vec2::Zero();  // target-image coordinates; NaN if unprojectable
  bool in_bounds = false;
};

// Refraction-bent epipolar curve of a source pixel in the other image,
// sampled over a bounded depth interval.
struct EpipolarLocus {
  Vec2 source_pixel = Vec2::Zero();
  CameraId source_camera = CameraId::Left;
  std::vector<LocusSample> samples;  // strictly increasing depth_z
  double z_min = 0.0;
  double z_max = 0.0;
};

struct RowInterval {
  int row = 0;
  int col_start = 0;  // half-open [col_start, col_end)
  int col_end = 0;
};

// Dilated pixel region around the locus: per-row half-open column intervals,
// sorted by row then column, non-overlapping, clipped to the target image.
struct SearchDomain {
  std::vector<RowInterval> rows;
  int dilation_radius = 0;
  Vec2 source_pixel = Vec2::Zero();

  bool contains(int row, int col) const;
  std::size_t pixel_count() const;
};

// Projects the source pixel's water ray into the other camera at sample_count
// depths spaced uniformly in inverse depth over [z_min, z_max]. Out-of-image
// samples are flagged, not errors; EmptyLocus if no sample lands in bounds.
EpipolarLocus epipolar_locus(const StereoRig& rig, CameraId source_camera,
                             const Vec2& pixel, double z_min, double z_max,
                             int sample_count);

// Rasterizes the locus polyline conservatively (every pixel a segment
// touches), dilates by the Chebyshev radius, merges per-row intervals and
// clips to the target image bounds.
SearchDomain build_search_domain(const EpipolarLocus& locus,
                                 int dilation_radius, int image_width,
                                 int image_height);

// Pixels covered by the unit squares a segment passes through (supercover
// rasterization; pixel (c, r) owns [c-0.5, c+0.5) x [r-0.5, r+0.5)).
std::vector<Eigen::Vector2i> supercover_segment(const Vec2& a, const Vec2& b);

}  // namespace uws
