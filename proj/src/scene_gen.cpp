#include "curbplan/scene_gen.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "curbplan/random.hpp"

namespace curbplan {

using geo::Point;
using nlohmann::json;

namespace {

json day_names(std::initializer_list<int> days) {
  static const char* names[] = {"mon", "tue", "wed", "thu", "fri", "sat", "sun"};
  json out = json::array();
  for (int d : days) out.push_back(names[d]);
  return out;
}

json all_week() {
  return day_names({0, 1, 2, 3, 4, 5, 6});
}

json weekdays() {
  return day_names({0, 1, 2, 3, 4});
}

/// Builds the scene document in geographic coordinates from local-meter
/// geometry, then routes it through the normal loader so generated scenes
/// are exactly what a file round-trip would produce.
struct Builder {
  Rng rng;
  double origin_lat = 0.0;
  double origin_lon = 0.0;

  json buildings = json::array();
  json segments = json::array();
  json rules = json::array();
  json heatmap = json::array();
  json nodes = json::array();
  json edges = json::array();
  json gt_entrances = json::array();
  json gt_signs = json::array();

  int next_building = 1;
  int next_entrance = 1;
  int next_segment = 1;
  int next_rule = 1;
  int next_node = 1;
  bool allday_used = false;

  explicit Builder(uint64_t seed) : rng(seed) {
    origin_lat = rng.uniform(32.0, 45.0);
    origin_lon = rng.uniform(-122.0, -74.0);
  }

  json latlon(const Point& p) const {
    const auto c = geo::to_geographic(p, origin_lat, origin_lon);
    return json::array({c.lat, c.lon});
  }

  json polyline(const std::vector<Point>& pts) const {
    json out = json::array();
    for (const auto& p : pts) out.push_back(latlon(p));
    return out;
  }

  int add_rule(int segment_id, json schedule, const std::string& status, int limit,
               double fine, std::optional<double> enforcement, const std::string& source,
               bool ambiguous, int priority) {
    const int id = next_rule++;
    json r{{"id", id},
           {"segment_id", segment_id},
           {"schedule", std::move(schedule)},
           {"status", status},
           {"fine", fine},
           {"source", source},
           {"priority", priority}};
    if (status == "time_limited") r["limit_minutes"] = limit;
    if (enforcement) r["enforcement_rate"] = *enforcement;
    if (ambiguous) r["sign_ambiguous"] = true;
    rules.push_back(std::move(r));
    return id;
  }

  json window(json days, int start, int end) {
    return json{{"days", std::move(days)}, {"start", start}, {"end", end}};
  }

  enum class SegmentRules {
    guaranteed_legal,  // either an explicit all-week legal rule or no rule
    restricted_mix,    // anything except all-day illegal
    any                // may draw all-day illegal once per scene
  };

  std::vector<int> draw_rules(int segment_id, SegmentRules policy) {
    std::vector<int> ids;
    if (policy == SegmentRules::guaranteed_legal) {
      if (rng.bernoulli(0.5)) {
        ids.push_back(add_rule(segment_id, json::array({window(all_week(), 0, 1440)}),
                               "legal", 0, 0.0, std::nullopt, "structured", false, 30));
      }
      return ids;
    }

    double u = rng.uniform();
    const bool allow_allday = policy == SegmentRules::any && !allday_used;
    if (u < 0.18) {
      // no rule at all
    } else if (u < 0.28) {
      ids.push_back(add_rule(segment_id, json::array({window(all_week(), 0, 1440)}),
                             "legal", 0, 0.0, std::nullopt, "structured", false, 30));
    } else if (u < 0.40 && allow_allday) {
      allday_used = true;
      ids.push_back(add_rule(segment_id, json::array({window(all_week(), 0, 1440)}),
                             "illegal", 0, 115.0, std::nullopt, "structured", false, 30));
    } else if (u < 0.52) {
      const double fine = std::round(rng.uniform(60.0, 120.0));
      ids.push_back(add_rule(segment_id, json::array({window(weekdays(), 420, 1140)}),
                             "illegal", 0, fine, std::nullopt, "structured", false, 30));
    } else if (u < 0.72) {
      const int limit = std::array{15, 30, 60, 120}[rng.uniform_int(0, 3)];
      const double fine = std::round(rng.uniform(40.0, 80.0));
      const double enforcement = rng.uniform(0.2, 0.9);
      ids.push_back(add_rule(segment_id,
                             json::array({window(day_names({0, 1, 2, 3, 4, 5}), 480, 1080)}),
                             "time_limited", limit, fine, enforcement, "structured", false,
                             30));
    } else if (u < 0.86) {
      const double fine = std::round(rng.uniform(40.0, 115.0));
      const double enforcement = rng.uniform(0.15, 0.8);
      const int start = 60 * rng.uniform_int(6, 10);
      const int end = 60 * rng.uniform_int(15, 22);
      ids.push_back(add_rule(segment_id, json::array({window(weekdays(), start, end)}),
                             "illegal", 0, fine, enforcement, "historical", false, 20));
    } else {
      const double fine = std::round(rng.uniform(40.0, 90.0));
      const bool limited = rng.bernoulli(0.5);
      const int limit = limited ? std::array{30, 60}[rng.uniform_int(0, 1)] : 0;
      const int rule_id = add_rule(
          segment_id, json::array({window(all_week(), 420, 1260)}),
          limited ? "time_limited" : "illegal", limit, fine,
          limited ? std::optional<double>(rng.uniform(0.2, 0.8)) : std::nullopt, "vlm",
          true, 10);
      gt_signs.push_back(json{{"rule_id", rule_id},
                              {"legible", rng.bernoulli(0.8)},
                              {"confidence", rng.uniform(0.55, 0.95)}});
    }
    return ids;
  }

  int add_segment(const std::vector<Point>& pts, const std::string& maneuver,
                  SegmentRules policy) {
    const int id = next_segment++;
    const auto rule_ids = draw_rules(id, policy);
    segments.push_back(json{{"id", id},
                            {"geometry", polyline(pts)},
                            {"maneuver", maneuver},
                            {"rule_ids", rule_ids}});
    return id;
  }

  /// Rectangle footprint, counter-clockwise, closed.
  std::vector<Point> rect(Point center, double w, double d) const {
    const double hw = w / 2.0, hd = d / 2.0;
    return {{center.x - hw, center.y - hd},
            {center.x + hw, center.y - hd},
            {center.x + hw, center.y + hd},
            {center.x - hw, center.y + hd},
            {center.x - hw, center.y - hd}};
  }

  struct Door {
    Point position;
    std::string kind;
  };

  int add_building(Point center, double w, double d, const std::vector<Door>& doors,
                   bool list_entrances) {
    const int id = next_building++;
    json ents = json::array();
    for (const auto& door : doors) {
      const int eid = next_entrance++;
      json e{{"id", eid},
             {"position", latlon(door.position)},
             {"kind", door.kind},
             {"confidence", 1.0},
             {"source", "structured"}};
      gt_entrances.push_back(e);
      if (list_entrances) {
        e["confidence"] = rng.uniform(0.75, 1.0);
        ents.push_back(e);
      }
    }
    buildings.push_back(json{{"id", id},
                             {"footprint", polyline(rect(center, w, d))},
                             {"entrances", ents}});
    return id;
  }

  int add_node(Point p) {
    const int id = next_node++;
    nodes.push_back(json{{"id", id}, {"position", latlon(p)}});
    return id;
  }

  void add_edge(int a, int b, Point pa, Point pb) {
    const double len = geo::euclidean_distance(pa, pb) * rng.uniform(1.0, 1.12);
    edges.push_back(json::array({a, b, len}));
  }

  void add_merchant_and_heatmap(const std::vector<Point>& hot_spots) {
    const double u = rng.uniform();
    int visits = 0;
    if (u < 0.15) {
      visits = 0;
    } else if (u < 0.40) {
      visits = rng.uniform_int(1, 9);
    } else {
      visits = rng.uniform_int(10, 60);
    }
    merchant_visits = visits;
    merchant_flag = rng.bernoulli(0.05);
    const bool with_heatmap = visits >= 10 ? rng.bernoulli(0.9) : rng.bernoulli(0.2);
    if (with_heatmap && !hot_spots.empty()) {
      const int cells = std::min<int>(rng.uniform_int(2, 4), hot_spots.size());
      std::vector<double> raw(cells);
      double sum = 0.0;
      for (auto& r : raw) {
        r = rng.uniform(0.5, 2.0);
        sum += r;
      }
      for (int i = 0; i < cells; ++i) {
        heatmap.push_back(
            json{{"position", latlon(hot_spots[i])}, {"weight", raw[i] / sum}});
      }
    }
  }

  int merchant_visits = 0;
  bool merchant_flag = false;

  json finish(Point destination) {
    json doc;
    doc["origin"] = json::array({origin_lat, origin_lon});
    doc["destination"] = latlon(destination);
    doc["buildings"] = buildings;
    doc["curb_segments"] = segments;
    doc["rules"] = rules;
    doc["pedestrian_graph"] = json{{"nodes", nodes}, {"edges", edges}};
    doc["merchant"] = json{{"visit_count", merchant_visits},
                           {"heatmap", heatmap},
                           {"dynamic_change_flag", merchant_flag}};
    doc["analysis_time"] = rng.uniform_int(0, kMinutesPerWeek - 1);
    doc["ground_truth"] = json{{"entrances", gt_entrances}, {"signs", gt_signs}};
    return doc;
  }
};

Point jittered(Builder& b, Point d, const GenOptions& opts) {
  if (opts.destination_jitter <= 0.0) return d;
  const double r = std::min(opts.destination_jitter, 50.0) * std::sqrt(b.rng.uniform());
  const double theta = b.rng.uniform(0.0, 2.0 * M_PI);
  return {d.x + r * std::cos(theta), d.y + r * std::sin(theta)};
}

json build_standalone(uint64_t seed, const GenOptions& opts) {
  Builder b(seed);

  const Point center{b.rng.uniform(-15.0, 15.0), b.rng.uniform(-10.0, 10.0)};
  const double w = b.rng.uniform(18.0, 36.0);
  const double d = b.rng.uniform(14.0, 28.0);

  std::vector<Builder::Door> doors;
  doors.push_back({{center.x, center.y - d / 2.0}, "front"});
  if (b.rng.bernoulli(0.5)) {
    doors.push_back({{center.x + w / 2.0, center.y}, "side"});
  }
  b.add_building(center, w, d, doors, b.rng.bernoulli(0.55));

  const double south_y = center.y - d / 2.0 - b.rng.uniform(10.0, 18.0);
  const double south_len = b.rng.uniform(130.0, 170.0);
  b.add_segment(
      {{center.x - south_len / 2.0, south_y}, {center.x + south_len / 2.0, south_y}},
      b.rng.bernoulli(0.5) ? "pull_over" : "parallel", Builder::SegmentRules::guaranteed_legal);

  const double north_y = center.y + d / 2.0 + b.rng.uniform(10.0, 18.0);
  const double north_len = b.rng.uniform(120.0, 170.0);
  b.add_segment(
      {{center.x - north_len / 2.0, north_y}, {center.x + north_len / 2.0, north_y}},
      b.rng.bernoulli(0.5) ? "pull_over" : "parallel", Builder::SegmentRules::restricted_mix);

  if (b.rng.bernoulli(0.5)) {
    const double side_x = center.x + (b.rng.bernoulli(0.5) ? 1.0 : -1.0) *
                                         (w / 2.0 + b.rng.uniform(12.0, 20.0));
    const double side_len = b.rng.uniform(80.0, 140.0);
    b.add_segment({{side_x, center.y - side_len / 2.0}, {side_x, center.y + side_len / 2.0}},
                  "parallel", Builder::SegmentRules::any);
  } else {
    const double stub_y = south_y - b.rng.uniform(14.0, 22.0);
    const double stub_len = b.rng.uniform(40.0, 80.0);
    b.add_segment(
        {{center.x - stub_len / 2.0, stub_y}, {center.x + stub_len / 2.0, stub_y}},
        "pull_over", Builder::SegmentRules::any);
  }

  if (b.rng.bernoulli(0.75)) {
    const Point door = doors.front().position;
    const double sw_y = south_y + 2.0;  // sidewalk just inside the curb
    const Point left{center.x - south_len / 2.0, sw_y};
    const Point mid{center.x, sw_y};
    const Point right{center.x + south_len / 2.0, sw_y};
    const int n_left = b.add_node(left);
    const int n_mid = b.add_node(mid);
    const int n_right = b.add_node(right);
    const int n_door = b.add_node(door);
    b.add_edge(n_left, n_mid, left, mid);
    b.add_edge(n_mid, n_right, mid, right);
    b.add_edge(n_mid, n_door, mid, door);
    if (b.rng.bernoulli(0.5)) {
      const Point far{center.x, north_y - 2.0};
      const int n_far = b.add_node(far);
      if (!b.rng.bernoulli(0.15)) {
        b.add_edge(n_mid, n_far, mid, far);  // otherwise left disconnected
      }
    }
  }

  b.add_merchant_and_heatmap({{center.x - 8.0, south_y},
                              {center.x + 6.0, south_y},
                              {center.x + 20.0, south_y},
                              {center.x - 22.0, south_y}});
  return b.finish(jittered(b, center, opts));
}

json build_row_shops(uint64_t seed, const GenOptions& opts) {
  Builder b(seed);

  const int n_shops = b.rng.uniform_int(4, 8);
  std::vector<double> widths(n_shops);
  double total_w = 0.0;
  for (auto& w : widths) {
    w = b.rng.uniform(8.0, 15.0);
    total_w += w;
  }
  const double depth = b.rng.uniform(10.0, 16.0);
  const double x0 = -total_w / 2.0;
  const int target = b.rng.uniform_int(0, n_shops - 1);

  Point destination{};
  double x = x0;
  for (int i = 0; i < n_shops; ++i) {
    const Point center{x + widths[i] / 2.0, depth / 2.0};
    std::vector<Builder::Door> doors;
    doors.push_back({{center.x, 0.0}, "front"});
    if (b.rng.bernoulli(0.2)) doors.push_back({{center.x, depth}, "rear"});
    b.add_building(center, widths[i], depth, doors, b.rng.bernoulli(0.55));
    if (i == target) destination = center;
    x += widths[i];
  }

  const double margin = b.rng.uniform(40.0, 70.0);
  const double main_y = -b.rng.uniform(8.0, 14.0);
  const double left = x0 - margin;
  const double right = x0 + total_w + margin;

  // main curb split into three stretches with independent rules
  const double c1 = left + (right - left) * b.rng.uniform(0.25, 0.4);
  const double c2 = left + (right - left) * b.rng.uniform(0.6, 0.75);
  const int legal_idx = b.rng.uniform_int(0, 2);
  const double bounds[4] = {left, c1, c2, right};
  for (int i = 0; i < 3; ++i) {
    const auto policy = i == legal_idx ? Builder::SegmentRules::guaranteed_legal
                                       : Builder::SegmentRules::any;
    b.add_segment({{bounds[i], main_y}, {bounds[i + 1], main_y}},
                  b.rng.bernoulli(0.6) ? "parallel" : "pull_over", policy);
  }

  const double opp_y = main_y - b.rng.uniform(12.0, 18.0);
  b.add_segment({{left, opp_y}, {right, opp_y}}, "parallel",
                Builder::SegmentRules::restricted_mix);

  const double side_x = right + b.rng.uniform(10.0, 16.0);
  const double side_len = b.rng.uniform(80.0, 140.0);
  b.add_segment({{side_x, opp_y}, {side_x, opp_y + side_len}}, "parallel",
                Builder::SegmentRules::restricted_mix);

  if (b.rng.bernoulli(0.75)) {
    const double sw_y = main_y + 2.0;
    const Point a{left, sw_y};
    const Point m{destination.x, sw_y};
    const Point z{right, sw_y};
    const Point door{destination.x, 0.0};
    const int na = b.add_node(a);
    const int nm = b.add_node(m);
    const int nz = b.add_node(z);
    const int nd = b.add_node(door);
    b.add_edge(na, nm, a, m);
    b.add_edge(nm, nz, m, z);
    b.add_edge(nm, nd, m, door);
    if (b.rng.bernoulli(0.5)) {
      const Point across{destination.x, opp_y - 2.0};
      const int nx = b.add_node(across);
      if (!b.rng.bernoulli(0.15)) b.add_edge(nm, nx, m, across);
    }
  }

  b.add_merchant_and_heatmap({{destination.x - 5.0, main_y},
                              {destination.x + 7.0, main_y},
                              {destination.x - 15.0, main_y},
                              {destination.x + 18.0, main_y}});
  return b.finish(jittered(b, destination, opts));
}

json build_strip_mall(uint64_t seed, const GenOptions& opts) {
  Builder b(seed);

  const int n_units = b.rng.uniform_int(2, 4);
  std::vector<double> widths(n_units);
  double total_w = 0.0;
  for (auto& w : widths) {
    w = b.rng.uniform(12.0, 20.0);
    total_w += w;
  }
  const double depth = b.rng.uniform(12.0, 18.0);
  const double row_y = b.rng.uniform(30.0, 45.0);
  const double x0 = -total_w / 2.0;
  const int target = b.rng.uniform_int(0, n_units - 1);

  Point destination{};
  double x = x0;
  for (int i = 0; i < n_units; ++i) {
    const Point center{x + widths[i] / 2.0, row_y + depth / 2.0};
    std::vector<Builder::Door> doors;
    doors.push_back({{center.x, row_y}, "front"});
    if (i == 0 && b.rng.bernoulli(0.4)) {
      doors.push_back({{x, row_y + depth / 2.0}, "loading"});
    }
    b.add_building(center, widths[i], depth, doors, b.rng.bernoulli(0.55));
    if (i == target) destination = center;
    x += widths[i];
  }

  // parking lot aisles south of the units
  const int n_aisles = b.rng.uniform_int(3, 4);
  const double aisle_w = b.rng.uniform(80.0, 120.0);
  const double pitch = b.rng.uniform(12.0, 16.0);
  const int legal_aisle = b.rng.uniform_int(0, n_aisles - 1);
  for (int k = 0; k < n_aisles; ++k) {
    const double y = row_y - 12.0 - k * pitch;
    const auto policy = k == legal_aisle ? Builder::SegmentRules::guaranteed_legal
                                         : Builder::SegmentRules::restricted_mix;
    b.add_segment({{-aisle_w / 2.0, y}, {aisle_w / 2.0, y}}, "lot_space", policy);
  }

  const double frontage_y = row_y - 5.0;
  b.add_segment({{x0 - 20.0, frontage_y}, {x0 + total_w + 20.0, frontage_y}}, "pull_over",
                Builder::SegmentRules::any);

  const double street_y = row_y - 12.0 - n_aisles * pitch - b.rng.uniform(8.0, 14.0);
  const double street_len = b.rng.uniform(100.0, 160.0);
  b.add_segment({{-street_len / 2.0, street_y}, {street_len / 2.0, street_y}}, "parallel",
                Builder::SegmentRules::restricted_mix);

  if (b.rng.bernoulli(0.6)) {
    const Point door{destination.x, row_y};
    const Point walk1{destination.x, frontage_y};
    const Point walk2{destination.x, row_y - 12.0 - (n_aisles - 1) * pitch};
    const int nd = b.add_node(door);
    const int n1 = b.add_node(walk1);
    const int n2 = b.add_node(walk2);
    b.add_edge(nd, n1, door, walk1);
    b.add_edge(n1, n2, walk1, walk2);
  }

  b.add_merchant_and_heatmap({{destination.x - 6.0, row_y - 12.0 - legal_aisle * pitch},
                              {destination.x + 8.0, row_y - 12.0 - legal_aisle * pitch},
                              {destination.x, frontage_y},
                              {destination.x - 18.0, frontage_y}});
  return b.finish(jittered(b, destination, opts));
}

}  // namespace

Scene generate_scene(uint64_t seed, ScenePreset preset, const GenOptions& opts) {
  if (opts.destination_jitter < 0.0 || opts.destination_jitter > 50.0) {
    throw std::invalid_argument("destination jitter must be in [0, 50] m");
  }
  const uint64_t mixed = mix_seed(seed, static_cast<uint64_t>(preset));
  json doc;
  switch (preset) {
    case ScenePreset::standalone: doc = build_standalone(mixed, opts); break;
    case ScenePreset::row_shops: doc = build_row_shops(mixed, opts); break;
    case ScenePreset::strip_mall: doc = build_strip_mall(mixed, opts); break;
  }
  return load_scene(doc);
}

const char* to_string(ScenePreset p) {
  switch (p) {
    case ScenePreset::standalone: return "standalone";
    case ScenePreset::row_shops: return "row_shops";
    case ScenePreset::strip_mall: return "strip_mall";
  }
  return "standalone";
}

ScenePreset preset_from_string(const std::string& s) {
  if (s == "standalone") return ScenePreset::standalone;
  if (s == "row_shops") return ScenePreset::row_shops;
  if (s == "strip_mall") return ScenePreset::strip_mall;
  throw std::invalid_argument("unknown preset '" + s + "'");
}

}  // namespace curbplan
