// Copyright 2026 the uwstereo authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "rig.hpp"

namespace uws {

// Water-side ray produced by back-projecting a pixel through the port.
struct WaterRay {
  Ray ray;  // origin on the outer port surface, medium_index = n_water
  CameraId source_camera = CameraId::Left;
  Vec2 source_pixel = Vec2::Zero();
};

// Pixel coordinates of a refractive projection. The coordinates stay valid
// when the point images outside the sensor; in_image reports the clip.
struct ProjectedPixel {
  Vec2 pixel = Vec2::Zero();
  bool in_image = false;
};

// Interface points of a solved Fermat path (both on the port planes).
struct FermatPath {
  Vec3 inner_point = Vec3::Zero();
  Vec3 outer_point = Vec3::Zero();
  double optical_length = 0.0;
  int iterations = 0;
};

// unproject_pinhole composed with trace_through_port.
WaterRay back_project(const StereoRig& rig, CameraId camera, const Vec2& pixel);

// Point on the pixel's water ray whose coordinate along the source camera's
// optical axis, measured from the camera center, equals depth_z.
Vec3 point_at_depth(const StereoRig& rig, CameraId camera, const Vec2& pixel,
                    double depth_z);

// Refractive projection of a water-side point via Fermat-path minimization:
// minimize n_air|C-P1| + n_glass|P1-P2| + n_water|P2-X| over P1 on the inner
// plane and P2 on the outer plane, then image the C->P1 direction through the
// pinhole model. The objective is convex; damped Newton from the straight-line
// initializer finds the unique physical path.
ProjectedPixel forward_project(const StereoRig& rig, CameraId camera,
                               const Vec3& point_world);

// As forward_project but also exposes the solved interface points (used by
// tests to check Snell consistency and path optimality).
ProjectedPixel forward_project_with_path(const StereoRig& rig, CameraId camera,
                                         const Vec3& point_world,
                                         FermatPath* path);

}  // namespace uws
