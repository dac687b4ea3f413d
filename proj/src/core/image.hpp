// Copyright 2026 the uwstereo authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <vector>

#include "errors.hpp"

namespace uws {

// Row-major grayscale image with intensities normalized to [0, 1].
struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<double> values;

  GrayImage() = default;
  GrayImage(int w, int h, double fill = 0.0)
      : width(w), height(h),
        values(static_cast<std::size_t>(w) * static_cast<std::size_t>(h),
               fill) {
    if (w <= 0 || h <= 0) {
      throw Error(ErrorCode::InvalidArgument, "image size must be positive");
    }
  }

  double at(int col, int row) const {
    return values[static_cast<std::size_t>(row) * width + col];
  }
  double& at(int col, int row) {
    return values[static_cast<std::size_t>(row) * width + col];
  }
};

// Per-pixel metric depth along the left camera's optical axis; 0.0 marks
// invalid pixels. residual carries the triangulation ray gap in meters.
struct DepthMap {
  int width = 0;
  int height = 0;
  std::vector<double> depth;
  std::vector<double> residual;

  DepthMap() = default;
  DepthMap(int w, int h)
      : width(w), height(h),
        depth(static_cast<std::size_t>(w) * h, 0.0),
        residual(static_cast<std::size_t>(w) * h, 0.0) {}

  double depth_at(int col, int row) const {
    return depth[static_cast<std::size_t>(row) * width + col];
  }
  bool valid_at(int col, int row) const { return depth_at(col, row) > 0.0; }
};

}  // namespace uws
