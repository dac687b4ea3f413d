// Copyright 2026 the uwstereo authors
// SPDX-License-Identifier: Apache-2.0

#include "search_domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <sstream>

namespace uws {

bool SearchDomain::contains(int row, int col) const {
  auto it = std::lower_bound(
      rows.begin(), rows.end(), row,
      [](const RowInterval& iv, int r) { return iv.row < r; });
  for (; it != rows.end() && it->row == row; ++it) {
    if (col >= it->col_start && col < it->col_end) return true;
  }
  return false;
}

std::size_t SearchDomain::pixel_count() const {
  std::size_t n = 0;
  for (const RowInterval& iv : rows) {
    n += static_cast<std::size_t>(iv.col_end - iv.col_start);
  }
  return n;
}

EpipolarLocus epipolar_locus(const StereoRig& rig, CameraId source_camera,
                             const Vec2& pixel, double z_min, double z_max,
                             int sample_count) {
  if (sample_count < 2) {
    throw Error(ErrorCode::InvalidArgument, "sample count must be >= 2");
  }
  if (!(z_max > z_min)) {
    throw Error(ErrorCode::InvalidArgument, "z_max must exceed z_min");
  }
  const RigCamera& cam = rig.camera(source_camera);
  const Vec3 axis = cam.pose.optical_axis_world();
  const Vec3 center = cam.pose.center();
  const double port_depth = (rig.port.outer_offset() -
                             rig.port.normal.dot(center)) /
                            rig.port.normal.dot(axis);
  if (!(z_min > port_depth)) {
    std::ostringstream oss;
    oss << "z_min = " << z_min << " must exceed the outer-port depth "
        << port_depth;
    throw Error(ErrorCode::InvalidArgument, oss.str());
  }

  const CameraId target_camera = other_camera(source_camera);

  EpipolarLocus locus;
  locus.source_pixel = pixel;
  locus.source_camera = source_camera;
  locus.z_min = z_min;
  locus.z_max = z_max;
  locus.samples.reserve(sample_count);

  // Uniform inverse-depth spacing approximates uniform image-space spacing.
  const double w_near = 1.0 / z_min;
  const double w_far = 1.0 / z_max;
  bool any_in_bounds = false;
  for (int i = 0; i < sample_count; ++i) {
    const double f = static_cast<double>(i) / (sample_count - 1);
    const double z = 1.0 / (w_near + f * (w_far - w_near));
    LocusSample sample;
    sample.depth_z = z;
    try {
      const Vec3 point = point_at_depth(rig, source_camera, pixel, z);
      const ProjectedPixel proj =
          forward_project(rig, target_camera, point);
      sample.pixel = proj.pixel;
      sample.in_bounds = proj.in_image;
    } catch (const Error& err) {
      if (err.code() == ErrorCode::ConvergenceFailure) throw;
      sample.pixel = Vec2::Constant(std::numeric_limits<double>::quiet_NaN());
      sample.in_bounds = false;
    }
    any_in_bounds = any_in_bounds || sample.in_bounds;
    locus.samples.push_back(sample);
  }
  if (!any_in_bounds) {
    std::ostringstream oss;
    oss << "no locus sample of pixel (" << pixel.x() << ", " << pixel.y()
        << ") lands inside the "
        << (target_camera == CameraId::Left ? "left" : "right") << " image";
    throw Error(ErrorCode::EmptyLocus, oss.str());
  }
  return locus;
}

std::vector<Eigen::Vector2i> supercover_segment(const Vec2& a, const Vec2& b) {
  // Shift so pixel (c, r) becomes the cell [c, c+1) x [r, r+1).
  const double x0 = a.x() + 0.5, y0 = a.y() + 0.5;
  const double x1 = b.x() + 0.5, y1 = b.y() + 0.5;

  int ix = static_cast<int>(std::floor(x0));
  int iy = static_cast<int>(std::floor(y0));
  const int ix_end = static_cast<int>(std::floor(x1));
  const int iy_end = static_cast<int>(std::floor(y1));

  std::vector<Eigen::Vector2i> cells;
  cells.emplace_back(ix, iy);

  const double dx = x1 - x0, dy = y1 - y0;
  const int step_x = dx > 0.0 ? 1 : -1;
  const int step_y = dy > 0.0 ? 1 : -1;
  const double inf = std::numeric_limits<double>::infinity();
  const double t_delta_x = dx != 0.0 ? std::abs(1.0 / dx) : inf;
  const double t_delta_y = dy != 0.0 ? std::abs(1.0 / dy) : inf;
  double t_max_x = inf, t_max_y = inf;
  if (dx != 0.0) {
    const double border = step_x > 0 ? ix + 1.0 : ix;
    t_max_x = (border - x0) / dx;
  }
  if (dy != 0.0) {
    const double border = step_y > 0 ? iy + 1.0 : iy;
    t_max_y = (border - y0) / dy;
  }

  const int max_steps =
      std::abs(ix_end - ix) + std::abs(iy_end - iy) + 4;
  for (int steps = 0; steps < 2 * max_steps; ++steps) {
    if (ix == ix_end && iy == iy_end) break;
    if (t_max_x < t_max_y) {
      ix += step_x;
      t_max_x += t_delta_x;
    } else if (t_max_y < t_max_x) {
      iy += step_y;
      t_max_y += t_delta_y;
    } else {
      // Exact corner crossing: cover both side cells to stay conservative.
      cells.emplace_back(ix + step_x, iy);
      cells.emplace_back(ix, iy + step_y);
      ix += step_x;
      iy += step_y;
      t_max_x += t_delta_x;
      t_max_y += t_delta_y;
    }
    cells.emplace_back(ix, iy);
  }
  return cells;
}

SearchDomain build_search_domain(const EpipolarLocus& locus,
                                 int dilation_radius, int image_width,
                                 int image_height) {
  if (dilation_radius < 0) {
    throw Error(ErrorCode::InvalidArgument, "dilation radius must be >= 0");
  }
  auto finite = [](const LocusSample& s) {
    return std::isfinite(s.pixel.x()) && std::isfinite(s.pixel.y());
  };

  // Rasterize segments between consecutive projectable samples; isolated
  // samples contribute their own pixel. Out-of-image parts are clipped below.
  std::set<std::pair<int, int>> raster;  // (row, col)
  auto add_pixel = [&raster](const Eigen::Vector2i& cell) {
    raster.emplace(cell.y(), cell.x());
  };
  const auto& samples = locus.samples;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!finite(samples[i])) continue;
    const bool prev_finite = i > 0 && finite(samples[i - 1]);
    if (prev_finite) {
      for (const auto& cell :
           supercover_segment(samples[i - 1].pixel, samples[i].pixel)) {
        add_pixel(cell);
      }
    } else {
      add_pixel(Eigen::Vector2i(
          static_cast<int>(std::llround(samples[i].pixel.x())),
          static_cast<int>(std::llround(samples[i].pixel.y()))));
    }
  }

  // Chebyshev dilation: gather the dilated column interval of every raster
  // pixel into its affected rows, then merge.
  std::map<int, std::vector<std::pair<int, int>>> row_intervals;
  const int r = dilation_radius;
  for (const auto& [row, col] : raster) {
    const int c0 = std::max(col - r, 0);
    const int c1 = std::min(col + r + 1, image_width);
    if (c0 >= c1) continue;
    const int r0 = std::max(row - r, 0);
    const int r1 = std::min(row + r + 1, image_height);
    for (int out_row = r0; out_row < r1; ++out_row) {
      row_intervals[out_row].emplace_back(c0, c1);
    }
  }

  SearchDomain domain;
  domain.dilation_radius = dilation_radius;
  domain.source_pixel = locus.source_pixel;
  for (auto& [row, intervals] : row_intervals) {
    std::sort(intervals.begin(), intervals.end());
    int start = intervals.front().first;
    int end = intervals.front().second;
    for (std::size_t i = 1; i < intervals.size(); ++i) {
      if (intervals[i].first > end) {
        domain.rows.push_back({row, start, end});
        start = intervals[i].first;
        end = intervals[i].second;
      } else {
        end = std::max(end, intervals[i].second);
      }
    }
    domain.rows.push_back({row, start, end});
  }
  if (domain.rows.empty()) {
    throw Error(ErrorCode::EmptyDomain,
                "search domain is empty after clipping to image bounds");
  }
  return domain;
}

}  // namespace uws
