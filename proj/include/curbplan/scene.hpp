#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "curbplan/geo.hpp"
#include "curbplan/rules.hpp"

namespace curbplan {

enum class EntranceKind { front, side, rear, loading };
enum class EntranceSource { structured, crowdsourced, vlm };

const char* to_string(EntranceKind k);
const char* to_string(EntranceSource s);

struct Entrance {
  int id = 0;
  geo::Point position;
  EntranceKind kind = EntranceKind::front;
  double confidence = 1.0;  // (0, 1]
  EntranceSource source = EntranceSource::structured;
};

struct Building {
  int id = 0;
  geo::Polyline footprint;  // closed: first point == last point
  std::vector<Entrance> entrances;  // empty means unknown
};

enum class Maneuver { pull_over, lot_space, parallel };

const char* to_string(Maneuver m);

struct CurbSegment {
  int id = 0;
  geo::Polyline geometry;
  Maneuver maneuver = Maneuver::parallel;
  std::vector<int> rule_ids;
};

struct HeatCell {
  geo::Point position;
  double weight = 0.0;  // positive; cell weights sum to 1
};

struct MerchantRecord {
  int visit_count = 0;
  std::vector<HeatCell> heatmap;
  bool dynamic_change_flag = false;
};

/// Zero-noise sign observation, stored with the scene for the mock analyzer
/// and benchmark scoring only. Solvers never read this block.
struct SignTruth {
  int rule_id = 0;
  bool legible = true;
  double confidence = 1.0;
};

struct GroundTruth {
  std::vector<Entrance> entrances;
  std::vector<SignTruth> signs;
};

struct Scene {
  double origin_lat = 0.0;
  double origin_lon = 0.0;
  geo::Point destination;
  std::vector<Building> buildings;
  std::vector<CurbSegment> curb_segments;
  std::vector<LegalityRule> rules;
  geo::PedestrianGraph pedestrian_graph;
  MerchantRecord merchant;
  int analysis_time = 0;  // minutes since Monday 00:00, [0, 10080)
  std::optional<GroundTruth> ground_truth;

  /// Parsed source document; serialization re-emits it so that
  /// load -> serialize -> load is an exact fixed point.
  nlohmann::json source;

  const CurbSegment* find_segment(int id) const;

  /// All entrances listed on buildings, in building order.
  std::vector<Entrance> listed_entrances() const;
};

class SceneParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SceneValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parse and fully validate a scene document. Geographic coordinates are
/// projected into the local meter frame. Throws SceneParseError (with the
/// offending field path) or SceneValidationError (naming the invariant).
Scene load_scene(const std::string& text);
Scene load_scene(const nlohmann::json& doc);
Scene load_scene_file(const std::string& path);

/// Canonical serialization of the scene's source document.
std::string serialize_scene(const Scene& scene);

struct Violation {
  std::string object;
  std::string message;
};

/// All invariant violations in the scene; empty for a valid scene. Reports
/// every violation, no short-circuit.
std::vector<Violation> validate_scene(const Scene& scene);

EntranceKind entrance_kind_from_string(const std::string& s);
EntranceSource entrance_source_from_string(const std::string& s);
Maneuver maneuver_from_string(const std::string& s);

}  // namespace curbplan
