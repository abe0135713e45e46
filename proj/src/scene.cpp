#include "curbplan/scene.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace curbplan {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw SceneParseError(path + ": " + what);
}

const json& member(const json& j, const char* key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected object");
  const auto it = j.find(key);
  if (it == j.end()) fail(path + "." + key, "missing required field");
  return *it;
}

const json* member_opt(const json& j, const char* key) {
  if (!j.is_object()) return nullptr;
  const auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

double as_num(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected number");
  return j.get<double>();
}

int as_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected integer");
  return j.get<int>();
}

bool as_bool(const json& j, const std::string& path) {
  if (!j.is_boolean()) fail(path, "expected boolean");
  return j.get<bool>();
}

std::string as_str(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected string");
  return j.get<std::string>();
}

geo::GeoCoord as_latlon(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) fail(path, "expected [lat, lon] pair");
  return {as_num(j[0], path + "[0]"), as_num(j[1], path + "[1]")};
}

struct Projector {
  double origin_lat, origin_lon;

  geo::Point operator()(const json& j, const std::string& path) const {
    const auto c = as_latlon(j, path);
    try {
      return geo::project_to_local(c.lat, c.lon, origin_lat, origin_lon);
    } catch (const std::invalid_argument& e) {
      throw SceneValidationError(path + ": " + e.what());
    }
  }
};

int day_from_string(const std::string& s, const std::string& path) {
  static const char* names[] = {"mon", "tue", "wed", "thu", "fri", "sat", "sun"};
  for (int i = 0; i < 7; ++i) {
    if (s == names[i]) return i;
  }
  fail(path, "unknown day name '" + s + "'");
}

geo::Polyline parse_polyline(const json& j, const Projector& proj, const std::string& path) {
  if (!j.is_array()) fail(path, "expected array of [lat, lon] pairs");
  geo::Polyline line;
  for (size_t i = 0; i < j.size(); ++i) {
    line.points.push_back(proj(j[i], path + "[" + std::to_string(i) + "]"));
  }
  return line;
}

Entrance parse_entrance(const json& j, const Projector& proj, const std::string& path) {
  Entrance e;
  e.id = as_int(member(j, "id", path), path + ".id");
  e.position = proj(member(j, "position", path), path + ".position");
  e.kind = entrance_kind_from_string(as_str(member(j, "kind", path), path + ".kind"));
  e.confidence = as_num(member(j, "confidence", path), path + ".confidence");
  if (const auto* s = member_opt(j, "source")) {
    e.source = entrance_source_from_string(as_str(*s, path + ".source"));
  }
  return e;
}

LegalityRule parse_rule(const json& j, const std::string& path) {
  LegalityRule r;
  r.id = as_int(member(j, "id", path), path + ".id");
  r.segment_id = as_int(member(j, "segment_id", path), path + ".segment_id");
  const auto& sched = member(j, "schedule", path);
  if (!sched.is_array()) fail(path + ".schedule", "expected array");
  for (size_t i = 0; i < sched.size(); ++i) {
    const std::string wpath = path + ".schedule[" + std::to_string(i) + "]";
    RuleWindow w;
    const auto& days = member(sched[i], "days", wpath);
    if (!days.is_array()) fail(wpath + ".days", "expected array");
    for (size_t d = 0; d < days.size(); ++d) {
      w.days.insert(day_from_string(as_str(days[d], wpath + ".days"), wpath + ".days"));
    }
    w.start_minute = as_int(member(sched[i], "start", wpath), wpath + ".start");
    w.end_minute = as_int(member(sched[i], "end", wpath), wpath + ".end");
    r.schedule.push_back(std::move(w));
  }
  const std::string status = as_str(member(j, "status", path), path + ".status");
  if (status == "legal") {
    r.status = {LegalityKind::legal, 0};
  } else if (status == "illegal") {
    r.status = {LegalityKind::illegal, 0};
  } else if (status == "time_limited") {
    r.status = {LegalityKind::time_limited,
                as_int(member(j, "limit_minutes", path), path + ".limit_minutes")};
  } else {
    fail(path + ".status", "unknown status '" + status + "'");
  }
  r.fine = as_num(member(j, "fine", path), path + ".fine");
  if (const auto* e = member_opt(j, "enforcement_rate")) {
    r.enforcement_rate = as_num(*e, path + ".enforcement_rate");
  }
  const std::string source = as_str(member(j, "source", path), path + ".source");
  if (source == "structured") {
    r.source = RuleSource::structured;
  } else if (source == "historical") {
    r.source = RuleSource::historical;
  } else if (source == "vlm") {
    r.source = RuleSource::vlm;
  } else {
    fail(path + ".source", "unknown source '" + source + "'");
  }
  if (const auto* a = member_opt(j, "sign_ambiguous")) {
    r.sign_ambiguous = as_bool(*a, path + ".sign_ambiguous");
  }
  r.priority = as_int(member(j, "priority", path), path + ".priority");
  return r;
}

}  // namespace

Scene load_scene(const nlohmann::json& doc) {
  Scene scene;
  scene.source = doc;

  const auto origin = as_latlon(member(doc, "origin", "scene"), "origin");
  scene.origin_lat = origin.lat;
  scene.origin_lon = origin.lon;
  const Projector proj{origin.lat, origin.lon};

  scene.destination = proj(member(doc, "destination", "scene"), "destination");

  if (const auto* buildings = member_opt(doc, "buildings")) {
    if (!buildings->is_array()) fail("buildings", "expected array");
    for (size_t i = 0; i < buildings->size(); ++i) {
      const std::string path = "buildings[" + std::to_string(i) + "]";
      Building b;
      b.id = as_int(member((*buildings)[i], "id", path), path + ".id");
      b.footprint = parse_polyline(member((*buildings)[i], "footprint", path), proj,
                                   path + ".footprint");
      if (const auto* ents = member_opt((*buildings)[i], "entrances")) {
        if (!ents->is_array()) fail(path + ".entrances", "expected array");
        for (size_t k = 0; k < ents->size(); ++k) {
          b.entrances.push_back(parse_entrance(
              (*ents)[k], proj, path + ".entrances[" + std::to_string(k) + "]"));
        }
      }
      scene.buildings.push_back(std::move(b));
    }
  }

  const auto& segments = member(doc, "curb_segments", "scene");
  if (!segments.is_array()) fail("curb_segments", "expected array");
  for (size_t i = 0; i < segments.size(); ++i) {
    const std::string path = "curb_segments[" + std::to_string(i) + "]";
    CurbSegment s;
    s.id = as_int(member(segments[i], "id", path), path + ".id");
    s.geometry = parse_polyline(member(segments[i], "geometry", path), proj,
                                path + ".geometry");
    s.maneuver = maneuver_from_string(
        as_str(member(segments[i], "maneuver", path), path + ".maneuver"));
    if (const auto* ids = member_opt(segments[i], "rule_ids")) {
      if (!ids->is_array()) fail(path + ".rule_ids", "expected array");
      for (size_t k = 0; k < ids->size(); ++k) {
        s.rule_ids.push_back(as_int((*ids)[k], path + ".rule_ids[" + std::to_string(k) + "]"));
      }
    }
    scene.curb_segments.push_back(std::move(s));
  }

  if (const auto* rules = member_opt(doc, "rules")) {
    if (!rules->is_array()) fail("rules", "expected array");
    for (size_t i = 0; i < rules->size(); ++i) {
      scene.rules.push_back(parse_rule((*rules)[i], "rules[" + std::to_string(i) + "]"));
    }
  }

  if (const auto* graph = member_opt(doc, "pedestrian_graph")) {
    if (!graph->is_null()) {
      if (const auto* nodes = member_opt(*graph, "nodes")) {
        if (!nodes->is_array()) fail("pedestrian_graph.nodes", "expected array");
        for (size_t i = 0; i < nodes->size(); ++i) {
          const std::string path = "pedestrian_graph.nodes[" + std::to_string(i) + "]";
          const int id = as_int(member((*nodes)[i], "id", path), path + ".id");
          if (scene.pedestrian_graph.nodes.count(id)) fail(path + ".id", "duplicate node id");
          scene.pedestrian_graph.nodes[id] =
              proj(member((*nodes)[i], "position", path), path + ".position");
        }
      }
      if (const auto* edges = member_opt(*graph, "edges")) {
        if (!edges->is_array()) fail("pedestrian_graph.edges", "expected array");
        for (size_t i = 0; i < edges->size(); ++i) {
          const std::string path = "pedestrian_graph.edges[" + std::to_string(i) + "]";
          const auto& e = (*edges)[i];
          if (!e.is_array() || e.size() != 3) fail(path, "expected [a, b, length]");
          scene.pedestrian_graph.edges.push_back(
              {as_int(e[0], path + "[0]"), as_int(e[1], path + "[1]"),
               as_num(e[2], path + "[2]")});
        }
      }
    }
  }

  if (const auto* merchant = member_opt(doc, "merchant")) {
    const std::string path = "merchant";
    scene.merchant.visit_count =
        as_int(member(*merchant, "visit_count", path), path + ".visit_count");
    if (const auto* cells = member_opt(*merchant, "heatmap")) {
      if (!cells->is_array()) fail(path + ".heatmap", "expected array");
      for (size_t i = 0; i < cells->size(); ++i) {
        const std::string cpath = path + ".heatmap[" + std::to_string(i) + "]";
        HeatCell cell;
        cell.position = proj(member((*cells)[i], "position", cpath), cpath + ".position");
        cell.weight = as_num(member((*cells)[i], "weight", cpath), cpath + ".weight");
        scene.merchant.heatmap.push_back(cell);
      }
    }
    if (const auto* flag = member_opt(*merchant, "dynamic_change_flag")) {
      scene.merchant.dynamic_change_flag = as_bool(*flag, path + ".dynamic_change_flag");
    }
  }

  if (const auto* t = member_opt(doc, "analysis_time")) {
    scene.analysis_time = as_int(*t, "analysis_time");
  }

  if (const auto* gt = member_opt(doc, "ground_truth")) {
    if (!gt->is_null()) {
      GroundTruth truth;
      if (const auto* ents = member_opt(*gt, "entrances")) {
        if (!ents->is_array()) fail("ground_truth.entrances", "expected array");
        for (size_t i = 0; i < ents->size(); ++i) {
          truth.entrances.push_back(parse_entrance(
              (*ents)[i], proj, "ground_truth.entrances[" + std::to_string(i) + "]"));
        }
      }
      if (const auto* signs = member_opt(*gt, "signs")) {
        if (!signs->is_array()) fail("ground_truth.signs", "expected array");
        for (size_t i = 0; i < signs->size(); ++i) {
          const std::string path = "ground_truth.signs[" + std::to_string(i) + "]";
          SignTruth s;
          s.rule_id = as_int(member((*signs)[i], "rule_id", path), path + ".rule_id");
          s.legible = as_bool(member((*signs)[i], "legible", path), path + ".legible");
          s.confidence =
              as_num(member((*signs)[i], "confidence", path), path + ".confidence");
          truth.signs.push_back(s);
        }
      }
      scene.ground_truth = std::move(truth);
    }
  }

  const auto violations = validate_scene(scene);
  if (!violations.empty()) {
    std::ostringstream msg;
    for (size_t i = 0; i < violations.size(); ++i) {
      if (i) msg << "; ";
      msg << violations[i].object << ": " << violations[i].message;
    }
    throw SceneValidationError(msg.str());
  }
  return scene;
}

Scene load_scene(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw SceneParseError(std::string("invalid JSON: ") + e.what());
  }
  return load_scene(doc);
}

Scene load_scene_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SceneParseError("cannot open scene file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_scene(buf.str());
}

std::string serialize_scene(const Scene& scene) {
  if (scene.source.is_null()) {
    throw std::logic_error("scene has no source document to serialize");
  }
  return scene.source.dump(2) + "\n";
}

const CurbSegment* Scene::find_segment(int id) const {
  for (const auto& s : curb_segments) {
    if (s.id == id) return &s;
  }
  return nullptr;
}

std::vector<Entrance> Scene::listed_entrances() const {
  std::vector<Entrance> out;
  for (const auto& b : buildings) {
    out.insert(out.end(), b.entrances.begin(), b.entrances.end());
  }
  return out;
}

namespace {

void check_polyline(const geo::Polyline& line, const std::string& object,
                    std::vector<Violation>& out) {
  if (line.points.size() < 2) {
    out.push_back({object, "polyline needs at least 2 points"});
    return;
  }
  for (size_t i = 1; i < line.points.size(); ++i) {
    if (geo::euclidean_distance(line.points[i - 1], line.points[i]) == 0.0) {
      out.push_back({object, "consecutive polyline points coincide"});
      return;
    }
  }
  if (!(line.length() > 0.0)) {
    out.push_back({object, "polyline has zero length"});
  }
}

void check_point_bound(const geo::Point& p, const std::string& object,
                       std::vector<Violation>& out) {
  if (!std::isfinite(p.x) || !std::isfinite(p.y) || std::abs(p.x) > 10000.0 ||
      std::abs(p.y) > 10000.0) {
    out.push_back({object, "coordinate outside the 10 km local frame"});
  }
}

void check_confidence(double c, const std::string& object, std::vector<Violation>& out) {
  if (!(c > 0.0) || c > 1.0) {
    out.push_back({object, "confidence must be in (0, 1]"});
  }
}

}  // namespace

std::vector<Violation> validate_scene(const Scene& scene) {
  std::vector<Violation> out;

  if (scene.curb_segments.empty()) {
    out.push_back({"scene", "at least one curb segment required"});
  }
  check_point_bound(scene.destination, "destination", out);
  if (geo::euclidean_distance(scene.destination, {0.0, 0.0}) > 1000.0) {
    out.push_back({"destination", "destination farther than 1 km from origin"});
  }
  if (scene.analysis_time < 0 || scene.analysis_time >= kMinutesPerWeek) {
    out.push_back({"analysis_time", "weekly minute must be in [0, 10080)"});
  }

  // Listed entrances and ground-truth entrances are separate id spaces: a
  // ground-truth entry with a listed entrance's id describes the same door.
  std::set<int> listed_entrance_ids;
  std::set<int> truth_entrance_ids;
  const auto check_entrance_ids = [&](const std::vector<Entrance>& entrances,
                                      std::set<int>& ids, const std::string& where) {
    for (const auto& e : entrances) {
      if (!ids.insert(e.id).second) {
        out.push_back({where + " entrance " + std::to_string(e.id), "duplicate entrance id"});
      }
    }
  };

  std::set<int> building_ids;
  for (const auto& b : scene.buildings) {
    const std::string object = "building " + std::to_string(b.id);
    if (!building_ids.insert(b.id).second) {
      out.push_back({object, "duplicate building id"});
    }
    check_polyline(b.footprint, object + " footprint", out);
    for (const auto& p : b.footprint.points) check_point_bound(p, object + " footprint", out);
    if (b.footprint.points.size() >= 2) {
      const auto& first = b.footprint.points.front();
      const auto& last = b.footprint.points.back();
      if (std::abs(first.x - last.x) > 1e-9 || std::abs(first.y - last.y) > 1e-9) {
        out.push_back({object, "footprint not closed (first point != last point)"});
      }
    }
    for (const auto& e : b.entrances) {
      const std::string eobj = object + " entrance " + std::to_string(e.id);
      check_point_bound(e.position, eobj, out);
      check_confidence(e.confidence, eobj, out);
      if (b.footprint.points.size() >= 2 &&
          geo::distance_to_polyline(e.position, b.footprint) > 5.0 + 1e-9) {
        out.push_back({eobj, "entrance more than 5 m from building boundary"});
      }
    }
    check_entrance_ids(b.entrances, listed_entrance_ids, object);
  }

  std::set<int> segment_ids;
  std::set<int> rule_ids;
  for (const auto& r : scene.rules) rule_ids.insert(r.id);
  for (const auto& s : scene.curb_segments) {
    const std::string object = "segment " + std::to_string(s.id);
    if (!segment_ids.insert(s.id).second) {
      out.push_back({object, "duplicate segment id"});
    }
    check_polyline(s.geometry, object + " geometry", out);
    for (const auto& p : s.geometry.points) check_point_bound(p, object + " geometry", out);
    for (int rid : s.rule_ids) {
      if (!rule_ids.count(rid)) {
        out.push_back({object, "rule_ids references unknown rule " + std::to_string(rid)});
      }
    }
  }

  std::set<int> seen_rule_ids;
  for (const auto& r : scene.rules) {
    const std::string object = "rule " + std::to_string(r.id);
    if (!seen_rule_ids.insert(r.id).second) {
      out.push_back({object, "duplicate rule id"});
    }
    if (!segment_ids.count(r.segment_id)) {
      out.push_back({object, "unknown segment " + std::to_string(r.segment_id)});
    }
    for (const auto& w : r.schedule) {
      if (!(0 <= w.start_minute && w.start_minute < w.end_minute && w.end_minute <= 1440)) {
        out.push_back({object, "malformed schedule window (need 0 <= start < end <= 1440)"});
      }
      for (int d : w.days) {
        if (d < 0 || d > 6) out.push_back({object, "day index out of range"});
      }
    }
    if (r.fine < 0.0) {
      out.push_back({object, "negative fine"});
    }
    if ((r.status.kind == LegalityKind::illegal ||
         r.status.kind == LegalityKind::time_limited) &&
        !(r.fine > 0.0)) {
      out.push_back({object, "illegal/time_limited rule requires a positive fine"});
    }
    if (r.status.kind == LegalityKind::time_limited && r.status.limit_minutes <= 0) {
      out.push_back({object, "time limit must be positive"});
    }
    if (r.enforcement_rate &&
        (*r.enforcement_rate < 0.0 || *r.enforcement_rate > 1.0)) {
      out.push_back({object, "enforcement_rate must be in [0, 1]"});
    }
    if (r.sign_ambiguous && r.source != RuleSource::vlm) {
      out.push_back({object, "sign_ambiguous applies to vlm-sourced rules only"});
    }
  }

  for (const auto& [id, pos] : scene.pedestrian_graph.nodes) {
    check_point_bound(pos, "graph node " + std::to_string(id), out);
  }
  for (const auto& e : scene.pedestrian_graph.edges) {
    const std::string object =
        "graph edge (" + std::to_string(e.a) + ", " + std::to_string(e.b) + ")";
    const auto a = scene.pedestrian_graph.nodes.find(e.a);
    const auto b = scene.pedestrian_graph.nodes.find(e.b);
    if (a == scene.pedestrian_graph.nodes.end() || b == scene.pedestrian_graph.nodes.end()) {
      out.push_back({object, "edge references unknown node"});
      continue;
    }
    if (e.length < geo::euclidean_distance(a->second, b->second) - 1e-6) {
      out.push_back({object, "edge shorter than straight-line distance"});
    }
  }

  if (scene.merchant.visit_count < 0) {
    out.push_back({"merchant", "visit_count must be non-negative"});
  }
  if (!scene.merchant.heatmap.empty()) {
    double sum = 0.0;
    for (const auto& cell : scene.merchant.heatmap) {
      if (!(cell.weight > 0.0)) {
        out.push_back({"merchant heatmap", "cell weight must be positive"});
      }
      check_point_bound(cell.position, "merchant heatmap", out);
      sum += cell.weight;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
      out.push_back({"merchant heatmap", "weights not normalized (sum != 1)"});
    }
  }

  if (scene.ground_truth) {
    check_entrance_ids(scene.ground_truth->entrances, truth_entrance_ids, "ground_truth");
    for (const auto& e : scene.ground_truth->entrances) {
      const std::string object = "ground_truth entrance " + std::to_string(e.id);
      check_point_bound(e.position, object, out);
      check_confidence(e.confidence, object, out);
    }
    for (const auto& s : scene.ground_truth->signs) {
      const std::string object = "ground_truth sign for rule " + std::to_string(s.rule_id);
      if (!rule_ids.count(s.rule_id)) {
        out.push_back({object, "unknown rule " + std::to_string(s.rule_id)});
      }
      check_confidence(s.confidence, object, out);
    }
  }

  return out;
}

const char* to_string(EntranceKind k) {
  switch (k) {
    case EntranceKind::front: return "front";
    case EntranceKind::side: return "side";
    case EntranceKind::rear: return "rear";
    case EntranceKind::loading: return "loading";
  }
  return "front";
}

const char* to_string(EntranceSource s) {
  switch (s) {
    case EntranceSource::structured: return "structured";
    case EntranceSource::crowdsourced: return "crowdsourced";
    case EntranceSource::vlm: return "vlm";
  }
  return "structured";
}

const char* to_string(Maneuver m) {
  switch (m) {
    case Maneuver::pull_over: return "pull_over";
    case Maneuver::lot_space: return "lot_space";
    case Maneuver::parallel: return "parallel";
  }
  return "parallel";
}

EntranceKind entrance_kind_from_string(const std::string& s) {
  if (s == "front") return EntranceKind::front;
  if (s == "side") return EntranceKind::side;
  if (s == "rear") return EntranceKind::rear;
  if (s == "loading") return EntranceKind::loading;
  throw SceneParseError("unknown entrance kind '" + s + "'");
}

EntranceSource entrance_source_from_string(const std::string& s) {
  if (s == "structured") return EntranceSource::structured;
  if (s == "crowdsourced") return EntranceSource::crowdsourced;
  if (s == "vlm") return EntranceSource::vlm;
  throw SceneParseError("unknown entrance source '" + s + "'");
}

Maneuver maneuver_from_string(const std::string& s) {
  if (s == "pull_over") return Maneuver::pull_over;
  if (s == "lot_space") return Maneuver::lot_space;
  if (s == "parallel") return Maneuver::parallel;
  throw SceneParseError("unknown maneuver '" + s + "'");
}

}  // namespace curbplan
