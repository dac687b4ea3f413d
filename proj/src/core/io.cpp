// Copyright 2026 the uwstereo authors
// SPDX-License-Identifier: Apache-2.0

#include "io.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace uws {

namespace {

[[noreturn]] void io_fail(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::IoError, path + ": " + what);
}

std::ofstream open_out(const std::string& path, bool binary) {
  std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
  if (!out) io_fail(path, "cannot open for writing");
  return out;
}

std::ifstream open_in(const std::string& path, bool binary) {
  std::ifstream in(path, binary ? std::ios::binary : std::ios::in);
  if (!in) io_fail(path, "cannot open for reading");
  return in;
}

// Next whitespace-delimited token of a PGM header, skipping # comments.
std::string pnm_token(std::istream& in, const std::string& path) {
  std::string token;
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n') {
      }
      continue;
    }
    if (std::isspace(c)) {
      if (!token.empty()) return token;
      continue;
    }
    token.push_back(static_cast<char>(c));
  }
  if (token.empty()) io_fail(path, "truncated header");
  return token;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string format_float(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

}  // namespace

void write_pgm(const GrayImage& image, const std::string& path, int maxval) {
  if (maxval != 255 && maxval != 65535) {
    throw Error(ErrorCode::InvalidArgument, "PGM maxval must be 255 or 65535");
  }
  std::ofstream out = open_out(path, true);
  out << "P5\n" << image.width << " " << image.height << "\n" << maxval
      << "\n";
  std::vector<unsigned char> buffer;
  buffer.reserve(image.values.size() * (maxval == 255 ? 1 : 2));
  for (double v : image.values) {
    const long q = std::lround(std::clamp(v, 0.0, 1.0) * maxval);
    if (maxval == 255) {
      buffer.push_back(static_cast<unsigned char>(q));
    } else {
      buffer.push_back(static_cast<unsigned char>(q >> 8));  // big-endian
      buffer.push_back(static_cast<unsigned char>(q & 0xFF));
    }
  }
  out.write(reinterpret_cast<const char*>(buffer.data()),
            static_cast<std::streamsize>(buffer.size()));
  if (!out) io_fail(path, "write failed");
}

GrayImage read_pgm(const std::string& path) {
  std::ifstream in = open_in(path, true);
  if (pnm_token(in, path) != "P5") io_fail(path, "not a binary PGM (P5)");
  const int width = std::stoi(pnm_token(in, path));
  const int height = std::stoi(pnm_token(in, path));
  const int maxval = std::stoi(pnm_token(in, path));
  if (width <= 0 || height <= 0) io_fail(path, "bad dimensions");
  if (maxval != 255 && maxval != 65535) {
    io_fail(path, "unsupported maxval " + std::to_string(maxval));
  }
  // The header ends with exactly one whitespace byte (already consumed by
  // the tokenizer).
  GrayImage image(width, height);
  const std::size_t count = image.values.size();
  const std::size_t bytes = count * (maxval == 255 ? 1 : 2);
  std::vector<unsigned char> buffer(bytes);
  in.read(reinterpret_cast<char*>(buffer.data()),
          static_cast<std::streamsize>(bytes));
  if (static_cast<std::size_t>(in.gcount()) != bytes) {
    io_fail(path, "truncated pixel data");
  }
  for (std::size_t i = 0; i < count; ++i) {
    const unsigned q = maxval == 255
                           ? buffer[i]
                           : (static_cast<unsigned>(buffer[2 * i]) << 8) |
                                 buffer[2 * i + 1];
    image.values[i] = static_cast<double>(q) / maxval;
  }
  return image;
}

void write_pfm(const DepthMap& depth, const std::string& path) {
  std::ofstream out = open_out(path, true);
  out << "Pf\n" << depth.width << " " << depth.height << "\n-1.0\n";
  std::vector<float> row(depth.width);
  for (int r = depth.height - 1; r >= 0; --r) {  // bottom-to-top
    for (int c = 0; c < depth.width; ++c) {
      row[c] = static_cast<float>(
          depth.depth[static_cast<std::size_t>(r) * depth.width + c]);
    }
    out.write(reinterpret_cast<const char*>(row.data()),
              static_cast<std::streamsize>(row.size() * sizeof(float)));
  }
  if (!out) io_fail(path, "write failed");
}

DepthMap read_pfm(const std::string& path) {
  std::ifstream in = open_in(path, true);
  if (pnm_token(in, path) != "Pf") io_fail(path, "not a grayscale PFM (Pf)");
  const int width = std::stoi(pnm_token(in, path));
  const int height = std::stoi(pnm_token(in, path));
  const double scale = std::stod(pnm_token(in, path));
  if (width <= 0 || height <= 0) io_fail(path, "bad dimensions");
  if (!(scale < 0.0)) io_fail(path, "big-endian PFM not supported");
  DepthMap depth(width, height);
  std::vector<float> row(width);
  for (int r = height - 1; r >= 0; --r) {
    in.read(reinterpret_cast<char*>(row.data()),
            static_cast<std::streamsize>(row.size() * sizeof(float)));
    if (static_cast<std::size_t>(in.gcount()) != row.size() * sizeof(float)) {
      io_fail(path, "truncated pixel data");
    }
    for (int c = 0; c < width; ++c) {
      depth.depth[static_cast<std::size_t>(r) * width + c] = row[c];
    }
  }
  return depth;
}

void write_ply(const PointCloud& cloud, const std::string& path) {
  std::ofstream out = open_out(path, false);
  out << "ply\n"
      << "format ascii 1.0\n"
      << "element vertex " << cloud.points.size() << "\n"
      << "property float x\n"
      << "property float y\n"
      << "property float z\n"
      << "property float intensity\n"
      << "property float gap\n"
      << "end_header\n";
  for (const CloudPoint& p : cloud.points) {
    out << format_float(p.position.x()) << " " << format_float(p.position.y())
        << " " << format_float(p.position.z()) << " "
        << format_float(p.intensity) << " " << format_float(p.gap) << "\n";
  }
  if (!out) io_fail(path, "write failed");
}

void write_observations_csv(const std::vector<CornerObservation>& observations,
                            const std::string& path) {
  std::ofstream out = open_out(path, false);
  out << "view_id,camera,board_x,board_y,board_z,u,v\n";
  for (const CornerObservation& obs : observations) {
    out << obs.view_id << ","
        << (obs.camera == CameraId::Left ? "L" : "R") << ","
        << format_double(obs.board_point.x()) << ","
        << format_double(obs.board_point.y()) << ","
        << format_double(obs.board_point.z()) << ","
        << format_double(obs.pixel.x()) << ","
        << format_double(obs.pixel.y()) << "\n";
  }
  if (!out) io_fail(path, "write failed");
}

std::vector<CornerObservation> read_observations_csv(const std::string& path) {
  std::ifstream in = open_in(path, false);
  std::string line;
  int line_no = 0;
  auto fail = [&](const std::string& what) -> void {
    std::ostringstream oss;
    oss << path << ":" << line_no << ": " << what;
    throw Error(ErrorCode::ConfigError, oss.str());
  };
  if (!std::getline(in, line)) fail("empty file");
  ++line_no;
  if (line == "view_id,camera,board_x,board_y,board_z,u,v\r") {
    line.pop_back();
  }
  if (line != "view_id,camera,board_x,board_y,board_z,u,v") {
    fail("bad header '" + line + "'");
  }
  std::vector<CornerObservation> observations;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
      if (i == line.size() || line[i] == ',') {
        fields.push_back(line.substr(start, i - start));
        start = i + 1;
      }
    }
    if (fields.size() != 7) fail("expected 7 comma-separated fields");
    CornerObservation obs;
    try {
      obs.view_id = std::stoi(fields[0]);
      if (fields[1] == "L") {
        obs.camera = CameraId::Left;
      } else if (fields[1] == "R") {
        obs.camera = CameraId::Right;
      } else {
        fail("camera must be L or R, got '" + fields[1] + "'");
      }
      obs.board_point =
          Vec3(std::stod(fields[2]), std::stod(fields[3]),
               std::stod(fields[4]));
      obs.pixel = Vec2(std::stod(fields[5]), std::stod(fields[6]));
    } catch (const std::logic_error&) {
      fail("malformed numeric field");
    }
    observations.push_back(obs);
  }
  return observations;
}

void write_truth_match_csv(const std::vector<TruthMatch>& matches, int width,
                           int height, const std::string& path) {
  if (matches.size() != static_cast<std::size_t>(width) * height) {
    throw Error(ErrorCode::ImageSizeMismatch,
                "truth-match table does not cover the image");
  }
  std::ofstream out = open_out(path, false);
  out << "u,v,ur,vr,valid\n";
  for (int v = 0; v < height; ++v) {
    for (int u = 0; u < width; ++u) {
      const TruthMatch& m = matches[static_cast<std::size_t>(v) * width + u];
      out << u << "," << v << ",";
      if (m.valid) {
        out << format_double(m.pixel.x()) << "," << format_double(m.pixel.y())
            << ",1\n";
      } else {
        out << "0,0,0\n";
      }
    }
  }
  if (!out) io_fail(path, "write failed");
}

void write_search_domain_csv(const EpipolarLocus& locus,
                             const SearchDomain& domain,
                             const std::string& path) {
  std::ofstream out = open_out(path, false);
  out << "z,u,v,in_bounds\n";
  for (const LocusSample& s : locus.samples) {
    out << format_double(s.depth_z) << "," << format_double(s.pixel.x())
        << "," << format_double(s.pixel.y()) << "," << (s.in_bounds ? 1 : 0)
        << "\n";
  }
  out << "row,col_start,col_end\n";
  for (const RowInterval& iv : domain.rows) {
    out << iv.row << "," << iv.col_start << "," << iv.col_end << "\n";
  }
  if (!out) io_fail(path, "write failed");
}

}  // namespace uws
