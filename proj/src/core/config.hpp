// Copyright 2026 the uwstereo authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>

#include "rig.hpp"
#include "simulator.hpp"

namespace uws {

// Everything a run needs from one config file: the rig, plus optional
// simulator blocks. Sections: [left] [right] [port] [media] [index_model]
// [scene] [noise]; flat `key = value` lines, `#` comments.
struct ProjectConfig {
  StereoRig rig;
  std::optional<SceneSpec> scene;
  NoiseSpec noise;
};

// Parses and validates a config file. Unknown sections or keys are rejected
// with `file:line:` prefixes; rig invariants are re-checked on load.
ProjectConfig load_config(const std::string& path);

// Canonical writer; load(save(load(f))) equals load(f) field for field.
void save_config(const ProjectConfig& config, const std::string& path);

}  // namespace uws
