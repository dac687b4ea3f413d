// Copyright 2026 the uwstereo authors
// SPDX-License-Identifier: Apache-2.0

#include "simulator.hpp"

#include <algorithm>
#include <cmath>

namespace uws {

namespace {

// Deterministic lattice value in [0, 1) from cell coordinates and seed.
double lattice_value(std::uint64_t seed, std::int64_t ix, std::int64_t iy) {
  std::uint64_t h = seed;
  h ^= static_cast<std::uint64_t>(ix) * 0x9E3779B97F4A7C15ULL;
  h = (h ^ (h >> 30)) * 0xBF58476D1CE4E5B9ULL;
  h ^= static_cast<std::uint64_t>(iy) * 0xC2B2AE3D27D4EB4FULL;
  h = (h ^ (h >> 27)) * 0x94D049BB133111EBULL;
  h ^= h >> 31;
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

// Bilinear value noise on a unit lattice.
double value_noise(std::uint64_t seed, double x, double y) {
  const double fx = std::floor(x);
  const double fy = std::floor(y);
  const auto ix = static_cast<std::int64_t>(fx);
  const auto iy = static_cast<std::int64_t>(fy);
  const double tx = x - fx;
  const double ty = y - fy;
  const double v00 = lattice_value(seed, ix, iy);
  const double v10 = lattice_value(seed, ix + 1, iy);
  const double v01 = lattice_value(seed, ix, iy + 1);
  const double v11 = lattice_value(seed, ix + 1, iy + 1);
  const double top = v00 + tx * (v10 - v00);
  const double bottom = v01 + tx * (v11 - v01);
  return top + ty * (bottom - top);
}

struct PlaneGeometry {
  Vec3 normal;
  double offset;
};

PlaneGeometry plane_geometry(const PlanePose& pose) {
  const Vec3 n = pose.normal();
  return {n, n.dot(pose.translation)};
}

}  // namespace

double sample_texture(const TextureSpec& spec, double x, double y) {
  double sum = 0.0;
  double amplitude = 1.0;
  double total = 0.0;
  double frequency = 1.0 / spec.base_cell_m;
  for (int octave = 0; octave < spec.octaves; ++octave) {
    sum += amplitude * value_noise(spec.seed + octave, x * frequency,
                                   y * frequency);
    total += amplitude;
    amplitude *= 0.5;
    frequency *= 2.0;
  }
  const double v = sum / total;
  return std::clamp(0.5 + spec.contrast * (v - 0.5), 0.0, 1.0);
}

std::vector<RenderedPoint> render_points(const StereoRig& rig,
                                         const SceneSpec& scene) {
  std::vector<RenderedPoint> points;
  points.reserve(static_cast<std::size_t>(scene.grid_rows) * scene.grid_cols);
  const double row_mid = 0.5 * (scene.grid_rows - 1);
  const double col_mid = 0.5 * (scene.grid_cols - 1);
  for (int r = 0; r < scene.grid_rows; ++r) {
    for (int c = 0; c < scene.grid_cols; ++c) {
      RenderedPoint rp;
      const Vec3 local((c - col_mid) * scene.grid_spacing_m,
                       (r - row_mid) * scene.grid_spacing_m, 0.0);
      rp.point_world = scene.plane_pose.to_world(local);
      try {
        const ProjectedPixel p =
            forward_project(rig, CameraId::Left, rp.point_world);
        rp.pixel_left = p.pixel;
        rp.visible_left = p.in_image;
      } catch (const Error&) {
        rp.visible_left = false;
      }
      try {
        const ProjectedPixel p =
            forward_project(rig, CameraId::Right, rp.point_world);
        rp.pixel_right = p.pixel;
        rp.visible_right = p.in_image;
      } catch (const Error&) {
        rp.visible_right = false;
      }
      points.push_back(rp);
    }
  }
  return points;
}

StereoPairTruth render_stereo_pair(const StereoRig& rig,
                                   const SceneSpec& scene,
                                   const NoiseSpec& noise) {
  if (scene.kind == SceneKind::PointGrid) {
    throw Error(ErrorCode::InvalidArgument,
                "stereo pair rendering needs a plane scene");
  }
  const PlaneGeometry plane = plane_geometry(scene.plane_pose);
  const double half_extent = 0.5 * scene.extent_m;

  auto shade = [&](double lx, double ly) {
    if (scene.kind == SceneKind::Checkerboard) {
      const auto qx = static_cast<std::int64_t>(
          std::floor(lx / scene.checker_square_m));
      const auto qy = static_cast<std::int64_t>(
          std::floor(ly / scene.checker_square_m));
      return ((qx + qy) & 1) == 0 ? 0.9 : 0.1;
    }
    return sample_texture(scene.texture, lx, ly);
  };

  StereoPairTruth out;
  const CameraIntrinsics& li = rig.left.intrinsics;
  const CameraIntrinsics& ri = rig.right.intrinsics;
  out.left = GrayImage(li.width, li.height);
  out.right = GrayImage(ri.width, ri.height);
  out.truth_depth = DepthMap(li.width, li.height);
  out.truth_match.resize(static_cast<std::size_t>(li.width) * li.height);

  const Vec3 left_center = rig.left.pose.center();
  const Vec3 left_axis = rig.left.pose.optical_axis_world();

  // Hit point of a pixel's water ray on the target plane, or nullopt for
  // background.
  auto trace_pixel = [&](CameraId cam, int col, int row) -> std::pair<bool, Vec3> {
    try {
      const WaterRay wr = back_project(rig, cam, Vec2(col, row));
      const double denom = wr.ray.direction.dot(plane.normal);
      if (std::abs(denom) < 1e-14) return {false, Vec3::Zero()};
      const double t =
          (plane.offset - plane.normal.dot(wr.ray.origin)) / denom;
      if (!(t > 0.0)) return {false, Vec3::Zero()};
      const Vec3 hit = wr.ray.at(t);
      const Vec3 local = scene.plane_pose.rotation.transpose() *
                         (hit - scene.plane_pose.translation);
      if (std::abs(local.x()) > half_extent ||
          std::abs(local.y()) > half_extent) {
        return {false, Vec3::Zero()};
      }
      return {true, hit};
    } catch (const Error&) {
      return {false, Vec3::Zero()};
    }
  };

  auto local_of = [&](const Vec3& hit) {
    return Vec3(scene.plane_pose.rotation.transpose() *
                (hit - scene.plane_pose.translation));
  };

  for (int row = 0; row < li.height; ++row) {
    for (int col = 0; col < li.width; ++col) {
      const auto [on_plane, hit] = trace_pixel(CameraId::Left, col, row);
      if (!on_plane) continue;
      const Vec3 local = local_of(hit);
      out.left.at(col, row) = shade(local.x(), local.y());
      const std::size_t idx =
          static_cast<std::size_t>(row) * li.width + col;
      out.truth_depth.depth[idx] = (hit - left_center).dot(left_axis);
      try {
        const ProjectedPixel proj =
            forward_project(rig, CameraId::Right, hit);
        out.truth_match[idx].pixel = proj.pixel;
        out.truth_match[idx].valid = proj.in_image;
      } catch (const Error&) {
        out.truth_match[idx].valid = false;
      }
    }
  }
  for (int row = 0; row < ri.height; ++row) {
    for (int col = 0; col < ri.width; ++col) {
      const auto [on_plane, hit] = trace_pixel(CameraId::Right, col, row);
      if (!on_plane) continue;
      const Vec3 local = local_of(hit);
      out.right.at(col, row) = shade(local.x(), local.y());
    }
  }

  if (noise.intensity_sigma > 0.0) {
    NoiseStream stream(noise.seed);
    for (double& v : out.left.values) {
      v = std::clamp(v + noise.intensity_sigma * stream.next_normal(), 0.0,
                     1.0);
    }
    for (double& v : out.right.values) {
      v = std::clamp(v + noise.intensity_sigma * stream.next_normal(), 0.0,
                     1.0);
    }
  }
  return out;
}

std::vector<CornerObservation> synthesize_corner_observations(
    const StereoRig& rig, const std::vector<PlanePose>& board_poses,
    int rows, int cols, double spacing_m, const NoiseSpec& noise) {
  std::vector<CornerObservation> observations;
  NoiseStream stream(noise.seed);
  const double row_mid = 0.5 * (rows - 1);
  const double col_mid = 0.5 * (cols - 1);
  for (std::size_t view = 0; view < board_poses.size(); ++view) {
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < cols; ++c) {
        const Vec3 board_point((c - col_mid) * spacing_m,
                               (r - row_mid) * spacing_m, 0.0);
        const Vec3 world = board_poses[view].to_world(board_point);
        for (CameraId cam : {CameraId::Left, CameraId::Right}) {
          try {
            const ProjectedPixel proj = forward_project(rig, cam, world);
            if (!proj.in_image) continue;
            CornerObservation obs;
            obs.view_id = static_cast<int>(view);
            obs.camera = cam;
            obs.board_point = board_point;
            obs.pixel = proj.pixel;
            if (noise.pixel_sigma > 0.0) {
              obs.pixel.x() += noise.pixel_sigma * stream.next_normal();
              obs.pixel.y() += noise.pixel_sigma * stream.next_normal();
            }
            observations.push_back(obs);
          } catch (const Error&) {
            // Corner not visible in this camera.
          }
        }
      }
    }
  }
  return observations;
}

}  // namespace uws
