// Copyright 2026 the uwstereo authors
// SPDX-License-Identifier: Apache-2.0

#include "matcher.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <thread>

namespace uws {

namespace {

// Sum-scale variance below this counts as a flat window (well below even
// 16-bit quantization texture, well above double rounding noise).
constexpr double kFlatVarianceSum = 1e-9;

bool window_fits(const GrayImage& img, const Eigen::Vector2i& center,
                 int half) {
  return center.x() >= half && center.x() + half < img.width &&
         center.y() >= half && center.y() + half < img.height;
}

void require_window(const GrayImage& img, const Eigen::Vector2i& center,
                    int half, const char* side) {
  if (!window_fits(img, center, half)) {
    std::ostringstream oss;
    oss << side << " window at (" << center.x() << ", " << center.y()
        << ") exceeds the image";
    throw Error(ErrorCode::WindowOutOfBounds, oss.str());
  }
}

double zncc_cost(const GrayImage& left, const GrayImage& right,
                 const Eigen::Vector2i& pl, const Eigen::Vector2i& pr,
                 int half) {
  double sl = 0.0, sr = 0.0, sll = 0.0, srr = 0.0, slr = 0.0;
  for (int dy = -half; dy <= half; ++dy) {
    const double* lrow = &left.values[static_cast<std::size_t>(pl.y() + dy) *
                                          left.width + pl.x() - half];
    const double* rrow = &right.values[static_cast<std::size_t>(pr.y() + dy) *
                                           right.width + pr.x() - half];
    for (int dx = 0; dx <= 2 * half; ++dx) {
      const double l = lrow[dx];
      const double r = rrow[dx];
      sl += l;
      sr += r;
      sll += l * l;
      srr += r * r;
      slr += l * r;
    }
  }
  const double n = (2.0 * half + 1.0) * (2.0 * half + 1.0);
  const double var_l = sll - sl * sl / n;
  const double var_r = srr - sr * sr / n;
  if (var_l < kFlatVarianceSum || var_r < kFlatVarianceSum) return 0.0;
  const double cov = slr - sl * sr / n;
  return cov / std::sqrt(var_l * var_r);
}

double sad_cost(const GrayImage& left, const GrayImage& right,
                const Eigen::Vector2i& pl, const Eigen::Vector2i& pr,
                int half) {
  double sum = 0.0;
  for (int dy = -half; dy <= half; ++dy) {
    const double* lrow = &left.values[static_cast<std::size_t>(pl.y() + dy) *
                                          left.width + pl.x() - half];
    const double* rrow = &right.values[static_cast<std::size_t>(pr.y() + dy) *
                                           right.width + pr.x() - half];
    for (int dx = 0; dx <= 2 * half; ++dx) {
      sum += std::abs(lrow[dx] - rrow[dx]);
    }
  }
  const double n = (2.0 * half + 1.0) * (2.0 * half + 1.0);
  return sum / n;
}

bool better(double candidate, double best, CostMetric metric) {
  return metric == CostMetric::Zncc ? candidate > best : candidate < best;
}

// Stationary point of the parabola through (-1, cm), (0, c0), (+1, cp),
// clamped to [-0.5, 0.5]. Returns 0 when the curvature has the wrong sign
// for the metric (no local optimum to refine toward).
double parabola_offset(double cm, double c0, double cp, CostMetric metric) {
  const double curvature = 0.5 * (cp + cm - 2.0 * c0);
  const bool usable = metric == CostMetric::Zncc ? curvature < 0.0
                                                 : curvature > 0.0;
  if (!usable) return 0.0;
  const double offset = 0.25 * (cm - cp) / curvature;
  return std::clamp(offset, -0.5, 0.5);
}

}  // namespace

double patch_cost(const GrayImage& left, const GrayImage& right,
                  const Eigen::Vector2i& p_left,
                  const Eigen::Vector2i& p_right, int window,
                  CostMetric metric) {
  if (window < 3 || window % 2 == 0) {
    throw Error(ErrorCode::InvalidArgument, "window must be odd and >= 3");
  }
  const int half = window / 2;
  require_window(left, p_left, half, "left");
  require_window(right, p_right, half, "right");
  return metric == CostMetric::Zncc
             ? zncc_cost(left, right, p_left, p_right, half)
             : sad_cost(left, right, p_left, p_right, half);
}

MatchResult match_pixel(const GrayImage& left, const GrayImage& right,
                        const Eigen::Vector2i& p_left,
                        const SearchDomain& domain, int window,
                        CostMetric metric, double accept_threshold) {
  if (window < 3 || window % 2 == 0) {
    throw Error(ErrorCode::InvalidArgument, "window must be odd and >= 3");
  }
  const int half = window / 2;
  require_window(left, p_left, half, "left");

  MatchResult result;
  result.source_pixel = p_left.cast<double>();

  double best = 0.0;
  bool found = false;
  for (const RowInterval& iv : domain.rows) {
    if (iv.row < half || iv.row + half >= right.height) continue;
    const int c0 = std::max(iv.col_start, half);
    const int c1 = std::min(iv.col_end, right.width - half);
    for (int col = c0; col < c1; ++col) {
      const Eigen::Vector2i candidate(col, iv.row);
      const double score =
          metric == CostMetric::Zncc
              ? zncc_cost(left, right, p_left, candidate, half)
              : sad_cost(left, right, p_left, candidate, half);
      if (!found || better(score, best, metric)) {
        best = score;
        result.matched_int = candidate;
        found = true;
      }
    }
  }
  if (!found) {
    result.status = MatchStatus::NoDomain;
    return result;
  }
  result.score = best;

  const bool accepted = metric == CostMetric::Zncc ? best >= accept_threshold
                                                   : best <= accept_threshold;
  if (!accepted) {
    result.status = MatchStatus::LowScore;
    result.matched_pixel = result.matched_int.cast<double>();
    return result;
  }

  // Separable subpixel refinement; neighbor costs are taken wherever their
  // windows fit, independent of domain membership.
  auto cost_at = [&](int col, int row) -> std::optional<double> {
    const Eigen::Vector2i p(col, row);
    if (!window_fits(right, p, half)) return std::nullopt;
    return metric == CostMetric::Zncc ? zncc_cost(left, right, p_left, p, half)
                                      : sad_cost(left, right, p_left, p, half);
  };
  Vec2 refined = result.matched_int.cast<double>();
  const int bc = result.matched_int.x();
  const int br = result.matched_int.y();
  if (const auto cm = cost_at(bc - 1, br), cp = cost_at(bc + 1, br);
      cm && cp) {
    refined.x() += parabola_offset(*cm, best, *cp, metric);
  }
  if (const auto cm = cost_at(bc, br - 1), cp = cost_at(bc, br + 1);
      cm && cp) {
    refined.y() += parabola_offset(*cm, best, *cp, metric);
  }
  result.matched_pixel = refined;
  result.status = MatchStatus::Ok;
  return result;
}

std::pair<Vec3, double> triangulate_match(const StereoRig& rig,
                                          const Vec2& p_left,
                                          const Vec2& p_right) {
  const WaterRay left_ray = back_project(rig, CameraId::Left, p_left);
  const WaterRay right_ray = back_project(rig, CameraId::Right, p_right);
  const ClosestPointPair cp = closest_point_pair(left_ray.ray, right_ray.ray);
  if (!(rig.port.normal.dot(cp.midpoint) > rig.port.outer_offset())) {
    throw Error(ErrorCode::BehindCamera,
                "triangulated point falls on the air side of the port");
  }
  return {cp.midpoint, cp.gap};
}

namespace {

struct DenseContext {
  const StereoRig& rig;
  const GrayImage& left;
  const GrayImage& right;
  double z_min;
  double z_max;
  const MatchParams& params;
  Vec3 left_center;
  Vec3 left_axis;
};

void match_one_pixel(const DenseContext& ctx, int col, int row,
                     MatchResult& result, double& depth_out,
                     double& residual_out) {
  const Eigen::Vector2i px(col, row);
  result.source_pixel = px.cast<double>();
  result.status = MatchStatus::NoDomain;
  depth_out = 0.0;
  residual_out = 0.0;

  SearchDomain domain;
  try {
    const EpipolarLocus locus =
        epipolar_locus(ctx.rig, CameraId::Left, px.cast<double>(), ctx.z_min,
                       ctx.z_max, ctx.params.locus_samples);
    domain = build_search_domain(locus, ctx.params.dilation_radius,
                                 ctx.right.width, ctx.right.height);
  } catch (const Error&) {
    return;  // no usable search domain for this pixel
  }

  MatchResult mr =
      match_pixel(ctx.left, ctx.right, px, domain, ctx.params.window,
                  ctx.params.metric, ctx.params.accept_threshold);
  result = mr;
  if (mr.status != MatchStatus::Ok) return;

  // Left-right consistency by full re-matching from the right winner.
  try {
    const EpipolarLocus back_locus = epipolar_locus(
        ctx.rig, CameraId::Right, mr.matched_int.cast<double>(), ctx.z_min,
        ctx.z_max, ctx.params.locus_samples);
    const SearchDomain back_domain =
        build_search_domain(back_locus, ctx.params.dilation_radius,
                            ctx.left.width, ctx.left.height);
    const MatchResult back =
        match_pixel(ctx.right, ctx.left, mr.matched_int, back_domain,
                    ctx.params.window, ctx.params.metric,
                    ctx.params.accept_threshold);
    const bool consistent =
        back.status == MatchStatus::Ok &&
        (back.matched_int - px).cast<double>().lpNorm<Eigen::Infinity>() <=
            ctx.params.lr_max_px;
    if (!consistent) {
      result.status = MatchStatus::Inconsistent;
      return;
    }
  } catch (const Error&) {
    result.status = MatchStatus::Inconsistent;
    return;
  }

  try {
    const auto [point, gap] =
        triangulate_match(ctx.rig, px.cast<double>(), mr.matched_pixel);
    const double depth = (point - ctx.left_center).dot(ctx.left_axis);
    if (depth >= ctx.z_min && depth <= ctx.z_max) {
      depth_out = depth;
      residual_out = gap;
    }
  } catch (const Error&) {
    // Depth stays invalid; the match itself is still reported.
  }
}

}  // namespace

std::pair<DepthMap, std::vector<MatchResult>> match_dense(
    const StereoRig& rig, const GrayImage& left, const GrayImage& right,
    double z_min, double z_max, const MatchParams& params) {
  const CameraIntrinsics& li = rig.left.intrinsics;
  const CameraIntrinsics& ri = rig.right.intrinsics;
  if (left.width != li.width || left.height != li.height ||
      right.width != ri.width || right.height != ri.height) {
    throw Error(ErrorCode::ImageSizeMismatch,
                "image dimensions do not match the rig");
  }
  if (!(z_max > z_min)) {
    throw Error(ErrorCode::InvalidArgument, "z_max must exceed z_min");
  }

  DenseContext ctx{rig,   left,  right, z_min, z_max, params,
                   rig.left.pose.center(), rig.left.pose.optical_axis_world()};

  DepthMap depth_map(left.width, left.height);
  std::vector<MatchResult> results(
      static_cast<std::size_t>(left.width) * left.height);

  const int half = params.window / 2;
  const int row_begin = half;
  const int row_end = left.height - half;

  auto process_rows = [&](int r0, int r1) {
    for (int row = r0; row < r1; ++row) {
      for (int col = half; col < left.width - half; ++col) {
        const std::size_t idx =
            static_cast<std::size_t>(row) * left.width + col;
        match_one_pixel(ctx, col, row, results[idx], depth_map.depth[idx],
                        depth_map.residual[idx]);
      }
    }
  };

  const int threads = std::max(params.threads, 1);
  if (threads == 1 || row_end <= row_begin) {
    process_rows(row_begin, row_end);
  } else {
    // Static row partition; every pixel writes its own slot, so the result
    // is identical for any thread count.
    std::vector<std::thread> pool;
    const int total = row_end - row_begin;
    const int chunk = (total + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      const int r0 = row_begin + t * chunk;
      const int r1 = std::min(row_begin + (t + 1) * chunk, row_end);
      if (r0 >= r1) break;
      pool.emplace_back(process_rows, r0, r1);
    }
    for (std::thread& th : pool) th.join();
  }

  return {std::move(depth_map), std::move(results)};
}

PointCloud to_point_cloud(const StereoRig& rig, const DepthMap& depth_map,
                          const GrayImage& left) {
  if (depth_map.width != left.width || depth_map.height != left.height) {
    throw Error(ErrorCode::ImageSizeMismatch,
                "depth map and image dimensions differ");
  }
  PointCloud cloud;
  for (int row = 0; row < depth_map.height; ++row) {
    for (int col = 0; col < depth_map.width; ++col) {
      if (!depth_map.valid_at(col, row)) continue;
      const std::size_t idx =
          static_cast<std::size_t>(row) * depth_map.width + col;
      CloudPoint point;
      point.position = point_at_depth(rig, CameraId::Left,
                                      Vec2(col, row), depth_map.depth[idx]);
      point.intensity = left.at(col, row);
      point.gap = depth_map.residual[idx];
      cloud.points.push_back(point);
    }
  }
  return cloud;
}

}  // namespace uws
