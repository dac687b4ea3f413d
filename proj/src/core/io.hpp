// Copyright 2026 the uwstereo authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "calibration.hpp"
#include "image.hpp"
#include "matcher.hpp"
#include "search_domain.hpp"
#include "simulator.hpp"

namespace uws {

// Binary PGM (P5), maxval 255 or 65535; 16-bit samples are big-endian.
void write_pgm(const GrayImage& image, const std::string& path,
               int maxval = 65535);
GrayImage read_pgm(const std::string& path);

// Grayscale PFM ("Pf"), scale -1.0 (little-endian floats), rows stored
// bottom-to-top. Invalid depth is the 0.0 sentinel.
void write_pfm(const DepthMap& depth, const std::string& path);
DepthMap read_pfm(const std::string& path);

// ASCII PLY with per-vertex x, y, z, intensity, gap (all float).
void write_ply(const PointCloud& cloud, const std::string& path);

// Corner observations: header `view_id,camera,board_x,board_y,board_z,u,v`,
// camera in {L, R}.
void write_observations_csv(const std::vector<CornerObservation>& observations,
                            const std::string& path);
std::vector<CornerObservation> read_observations_csv(const std::string& path);

// Left-pixel ground-truth correspondences: header `u,v,ur,vr,valid`.
void write_truth_match_csv(const std::vector<TruthMatch>& matches, int width,
                           int height, const std::string& path);

// Locus samples (`z,u,v,in_bounds`) followed by the interval section
// (`row,col_start,col_end`).
void write_search_domain_csv(const EpipolarLocus& locus,
                             const SearchDomain& domain,
                             const std::string& path);

}  // namespace uws
