#pragma once

#include <cstdint>
#include <string>

#include "curbplan/scene.hpp"

namespace curbplan {

enum class ScenePreset { standalone, row_shops, strip_mall };

const char* to_string(ScenePreset p);
ScenePreset preset_from_string(const std::string& s);

struct GenOptions {
  /// Radius of uniform destination displacement, modeling geocode error.
  /// 0 disables it; capped at 50 m.
  double destination_jitter = 0.0;
};

/// Deterministic synthetic scene for (seed, preset). Every generated scene
/// validates cleanly, carries a ground-truth block, and keeps at least one
/// always-legal curb segment within 200 m of the destination. Pedestrian
/// graphs stay at 8 nodes or fewer.
Scene generate_scene(uint64_t seed, ScenePreset preset, const GenOptions& opts = {});

}  // namespace curbplan
