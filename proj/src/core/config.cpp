// Copyright 2026 the uwstereo authors
// SPDX-License-Identifier: Apache-2.0

#include "config.hpp"

#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <vector>

namespace uws {

namespace {

struct CameraStage {
  double fx = 0, fy = 0, cx = 0, cy = 0, k1 = 0, k2 = 0;
  int width = 0, height = 0;
  Mat3 rotation = Mat3::Identity();
  Vec3 translation = Vec3::Zero();
};

struct Stage {
  CameraStage left, right;
  Vec3 port_normal = Vec3::UnitZ();
  double inner_offset = 0.0, thickness = 0.0;
  double n_air = 1.0, n_glass = 1.0, n_water = 1.0;
  IndexModel index_model = IndexModel::defaults();
  bool scene_present = false;
  SceneSpec scene;
  NoiseSpec noise;
};

class Parser {
 public:
  explicit Parser(const std::string& path) : path_(path) {}

  [[noreturn]] void fail(const std::string& what) const {
    std::ostringstream oss;
    oss << path_ << ":" << line_no_ << ": " << what;
    throw Error(ErrorCode::ConfigError, oss.str());
  }

  ProjectConfig parse() {
    std::ifstream in(path_);
    if (!in) {
      throw Error(ErrorCode::IoError, path_ + ": cannot open for reading");
    }
    std::string line;
    std::string section;
    while (std::getline(in, line)) {
      ++line_no_;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos) continue;
      const auto last = line.find_last_not_of(" \t\r");
      line = line.substr(first, last - first + 1);

      if (line.front() == '[') {
        if (line.back() != ']') fail("malformed section header");
        section = line.substr(1, line.size() - 2);
        if (section != "left" && section != "right" && section != "port" &&
            section != "media" && section != "index_model" &&
            section != "scene" && section != "noise") {
          fail("unknown section [" + section + "]");
        }
        if (section == "scene") stage_.scene_present = true;
        continue;
      }
      const auto eq = line.find('=');
      if (eq == std::string::npos) fail("expected `key = value`");
      std::string key = line.substr(0, eq);
      std::string value = line.substr(eq + 1);
      auto trim = [](std::string& s) {
        const auto b = s.find_first_not_of(" \t");
        const auto e = s.find_last_not_of(" \t");
        s = b == std::string::npos ? "" : s.substr(b, e - b + 1);
      };
      trim(key);
      trim(value);
      if (key.empty()) fail("empty key");
      if (section.empty()) fail("key '" + key + "' outside any section");
      apply(section, key, value);
    }
    return assemble();
  }

 private:
  double number(const std::string& value) const {
    std::istringstream iss(value);
    double v;
    if (!(iss >> v) || !(iss >> std::ws).eof()) {
      fail("expected a number, got '" + value + "'");
    }
    return v;
  }

  int integer(const std::string& value) const {
    const double v = number(value);
    const int i = static_cast<int>(v);
    if (v != i) fail("expected an integer, got '" + value + "'");
    return i;
  }

  std::uint64_t unsigned64(const std::string& value) const {
    std::istringstream iss(value);
    std::uint64_t v;
    if (!(iss >> v) || !(iss >> std::ws).eof()) {
      fail("expected an unsigned integer, got '" + value + "'");
    }
    return v;
  }

  std::vector<double> numbers(const std::string& value,
                              std::size_t count) const {
    std::istringstream iss(value);
    std::vector<double> out;
    double v;
    while (iss >> v) out.push_back(v);
    if (!iss.eof() || out.size() != count) {
      std::ostringstream oss;
      oss << "expected " << count << " numbers, got '" << value << "'";
      fail(oss.str());
    }
    return out;
  }

  void apply_camera(CameraStage& cam, const std::string& key,
                    const std::string& value) {
    if (key == "fx") cam.fx = number(value);
    else if (key == "fy") cam.fy = number(value);
    else if (key == "cx") cam.cx = number(value);
    else if (key == "cy") cam.cy = number(value);
    else if (key == "k1") cam.k1 = number(value);
    else if (key == "k2") cam.k2 = number(value);
    else if (key == "width") cam.width = integer(value);
    else if (key == "height") cam.height = integer(value);
    else if (key == "rotation") {
      const auto v = numbers(value, 9);
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) cam.rotation(r, c) = v[3 * r + c];
    } else if (key == "translation") {
      const auto v = numbers(value, 3);
      cam.translation = Vec3(v[0], v[1], v[2]);
    } else {
      fail("unknown key '" + key + "'");
    }
  }

  void apply(const std::string& section, const std::string& key,
             const std::string& value) {
    if (section == "left") return apply_camera(stage_.left, key, value);
    if (section == "right") return apply_camera(stage_.right, key, value);
    if (section == "port") {
      if (key == "normal") {
        const auto v = numbers(value, 3);
        stage_.port_normal = Vec3(v[0], v[1], v[2]);
      } else if (key == "inner_offset") {
        stage_.inner_offset = number(value);
      } else if (key == "thickness") {
        stage_.thickness = number(value);
      } else {
        fail("unknown key '" + key + "'");
      }
      return;
    }
    if (section == "media") {
      if (key == "n_air") stage_.n_air = number(value);
      else if (key == "n_glass") stage_.n_glass = number(value);
      else if (key == "n_water") stage_.n_water = number(value);
      else fail("unknown key '" + key + "'");
      return;
    }
    if (section == "index_model") {
      IndexModel& m = stage_.index_model;
      static const std::map<std::string, double IndexModel::*> kFields = {
          {"a0", &IndexModel::a0},
          {"sal", &IndexModel::sal},
          {"sal_t", &IndexModel::sal_t},
          {"sal_t2", &IndexModel::sal_t2},
          {"t2", &IndexModel::t2},
          {"inv_lambda", &IndexModel::inv_lambda},
          {"sal_inv_lambda", &IndexModel::sal_inv_lambda},
          {"t_inv_lambda", &IndexModel::t_inv_lambda},
          {"inv_lambda2", &IndexModel::inv_lambda2},
          {"inv_lambda3", &IndexModel::inv_lambda3},
          {"depth_coeff", &IndexModel::depth_coeff},
      };
      const auto it = kFields.find(key);
      if (it == kFields.end()) fail("unknown key '" + key + "'");
      m.*(it->second) = number(value);
      return;
    }
    if (section == "scene") {
      SceneSpec& s = stage_.scene;
      if (key == "kind") {
        if (value == "point_grid") s.kind = SceneKind::PointGrid;
        else if (value == "textured_plane") s.kind = SceneKind::TexturedPlane;
        else if (value == "checkerboard") s.kind = SceneKind::Checkerboard;
        else fail("unknown scene kind '" + value + "'");
      } else if (key == "plane_rotation") {
        const auto v = numbers(value, 9);
        for (int r = 0; r < 3; ++r)
          for (int c = 0; c < 3; ++c) s.plane_pose.rotation(r, c) = v[3 * r + c];
      } else if (key == "plane_translation") {
        const auto v = numbers(value, 3);
        s.plane_pose.translation = Vec3(v[0], v[1], v[2]);
      } else if (key == "extent") {
        s.extent_m = number(value);
      } else if (key == "texture_seed") {
        s.texture.seed = unsigned64(value);
      } else if (key == "texture_octaves") {
        s.texture.octaves = integer(value);
      } else if (key == "texture_cell") {
        s.texture.base_cell_m = number(value);
      } else if (key == "texture_contrast") {
        s.texture.contrast = number(value);
      } else if (key == "checker_square") {
        s.checker_square_m = number(value);
      } else if (key == "grid_rows") {
        s.grid_rows = integer(value);
      } else if (key == "grid_cols") {
        s.grid_cols = integer(value);
      } else if (key == "grid_spacing") {
        s.grid_spacing_m = number(value);
      } else {
        fail("unknown key '" + key + "'");
      }
      return;
    }
    if (section == "noise") {
      if (key == "pixel_sigma") stage_.noise.pixel_sigma = number(value);
      else if (key == "intensity_sigma")
        stage_.noise.intensity_sigma = number(value);
      else if (key == "seed") stage_.noise.seed = unsigned64(value);
      else fail("unknown key '" + key + "'");
      return;
    }
    fail("unknown section [" + section + "]");
  }

  ProjectConfig assemble() {
    ProjectConfig config;
    try {
      auto build_camera = [](const CameraStage& c) {
        RigCamera cam;
        cam.intrinsics = CameraIntrinsics(c.fx, c.fy, c.cx, c.cy, c.k1, c.k2,
                                          c.width, c.height);
        cam.pose = CameraPose(c.rotation, c.translation);
        return cam;
      };
      config.rig = StereoRig(
          build_camera(stage_.left), build_camera(stage_.right),
          PortPlane(stage_.port_normal, stage_.inner_offset, stage_.thickness),
          MediaIndices(stage_.n_air, stage_.n_glass, stage_.n_water),
          stage_.index_model);
    } catch (const Error& err) {
      throw Error(ErrorCode::ConfigError, path_ + ": " + err.what());
    }
    if (stage_.scene_present) config.scene = stage_.scene;
    config.noise = stage_.noise;
    return config;
  }

  std::string path_;
  int line_no_ = 0;
  Stage stage_;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_camera(std::ostream& out, const char* name, const RigCamera& cam) {
  const CameraIntrinsics& i = cam.intrinsics;
  out << "[" << name << "]\n";
  out << "fx = " << fmt(i.fx) << "\n";
  out << "fy = " << fmt(i.fy) << "\n";
  out << "cx = " << fmt(i.cx) << "\n";
  out << "cy = " << fmt(i.cy) << "\n";
  out << "k1 = " << fmt(i.k1) << "\n";
  out << "k2 = " << fmt(i.k2) << "\n";
  out << "width = " << i.width << "\n";
  out << "height = " << i.height << "\n";
  out << "rotation =";
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) out << " " << fmt(cam.pose.rotation(r, c));
  out << "\n";
  out << "translation = " << fmt(cam.pose.translation.x()) << " "
      << fmt(cam.pose.translation.y()) << " "
      << fmt(cam.pose.translation.z()) << "\n\n";
}

}  // namespace

ProjectConfig load_config(const std::string& path) {
  return Parser(path).parse();
}

void save_config(const ProjectConfig& config, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw Error(ErrorCode::IoError, path + ": cannot open for writing");
  }
  write_camera(out, "left", config.rig.left);
  write_camera(out, "right", config.rig.right);

  const PortPlane& port = config.rig.port;
  out << "[port]\n";
  out << "normal = " << fmt(port.normal.x()) << " " << fmt(port.normal.y())
      << " " << fmt(port.normal.z()) << "\n";
  out << "inner_offset = " << fmt(port.inner_offset) << "\n";
  out << "thickness = " << fmt(port.thickness) << "\n\n";

  const MediaIndices& media = config.rig.media;
  out << "[media]\n";
  out << "n_air = " << fmt(media.n_air) << "\n";
  out << "n_glass = " << fmt(media.n_glass) << "\n";
  out << "n_water = " << fmt(media.n_water) << "\n\n";

  const IndexModel& m = config.rig.index_model;
  out << "[index_model]\n";
  out << "a0 = " << fmt(m.a0) << "\n";
  out << "sal = " << fmt(m.sal) << "\n";
  out << "sal_t = " << fmt(m.sal_t) << "\n";
  out << "sal_t2 = " << fmt(m.sal_t2) << "\n";
  out << "t2 = " << fmt(m.t2) << "\n";
  out << "inv_lambda = " << fmt(m.inv_lambda) << "\n";
  out << "sal_inv_lambda = " << fmt(m.sal_inv_lambda) << "\n";
  out << "t_inv_lambda = " << fmt(m.t_inv_lambda) << "\n";
  out << "inv_lambda2 = " << fmt(m.inv_lambda2) << "\n";
  out << "inv_lambda3 = " << fmt(m.inv_lambda3) << "\n";
  out << "depth_coeff = " << fmt(m.depth_coeff) << "\n";

  if (config.scene) {
    const SceneSpec& s = *config.scene;
    out << "\n[scene]\n";
    out << "kind = "
        << (s.kind == SceneKind::PointGrid
                ? "point_grid"
                : s.kind == SceneKind::TexturedPlane ? "textured_plane"
                                                     : "checkerboard")
        << "\n";
    out << "plane_rotation =";
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) out << " " << fmt(s.plane_pose.rotation(r, c));
    out << "\n";
    out << "plane_translation = " << fmt(s.plane_pose.translation.x()) << " "
        << fmt(s.plane_pose.translation.y()) << " "
        << fmt(s.plane_pose.translation.z()) << "\n";
    out << "extent = " << fmt(s.extent_m) << "\n";
    out << "texture_seed = " << s.texture.seed << "\n";
    out << "texture_octaves = " << s.texture.octaves << "\n";
    out << "texture_cell = " << fmt(s.texture.base_cell_m) << "\n";
    out << "texture_contrast = " << fmt(s.texture.contrast) << "\n";
    out << "checker_square = " << fmt(s.checker_square_m) << "\n";
    out << "grid_rows = " << s.grid_rows << "\n";
    out << "grid_cols = " << s.grid_cols << "\n";
    out << "grid_spacing = " << fmt(s.grid_spacing_m) << "\n";
  }

  out << "\n[noise]\n";
  out << "pixel_sigma = " << fmt(config.noise.pixel_sigma) << "\n";
  out << "intensity_sigma = " << fmt(config.noise.intensity_sigma) << "\n";
  out << "seed = " << config.noise.seed << "\n";
  if (!out) {
    throw Error(ErrorCode::IoError, path + ": write failed");
  }
}

}  // namespace uws
