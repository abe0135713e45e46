#include "curbplan/geojson.hpp"

#include <map>

#include "curbplan/analyzer.hpp"

namespace curbplan {

using nlohmann::json;

namespace {

json point_geometry(const geo::Point& p, const Scene& scene) {
  const auto c = geo::to_geographic(p, scene.origin_lat, scene.origin_lon);
  return json{{"type", "Point"}, {"coordinates", json::array({c.lon, c.lat})}};
}

json feature(json geometry, json properties) {
  return json{{"type", "Feature"},
              {"geometry", std::move(geometry)},
              {"properties", std::move(properties)}};
}

}  // namespace

json recommendation_geojson(const Scene& scene,
                            const std::vector<ParkingCandidate>& candidates,
                            const std::vector<CostBreakdown>& costs,
                            const std::vector<Entrance>& entrances,
                            const Recommendation& rec) {
  json features = json::array();

  features.push_back(
      feature(point_geometry(scene.destination, scene), json{{"role", "destination"}}));

  for (const auto& e : entrances) {
    features.push_back(feature(point_geometry(e.position, scene),
                               json{{"role", "entrance"},
                                    {"id", e.id},
                                    {"kind", to_string(e.kind)},
                                    {"confidence", e.confidence},
                                    {"source", to_string(e.source)},
                                    {"synthetic", e.id == kSyntheticEntranceId}}));
  }

  std::map<int, int> rank_of;  // candidate id -> 1-based rank
  for (size_t i = 0; i < rec.entries.size(); ++i) {
    rank_of[rec.entries[i].candidate.id] = static_cast<int>(i) + 1;
  }

  for (size_t i = 0; i < candidates.size(); ++i) {
    const auto& c = candidates[i];
    const auto& cost = costs[i];
    json props{{"role", "candidate"},
               {"id", c.id},
               {"segment_id", c.segment_id},
               {"offset_m", c.offset},
               {"maneuver", to_string(c.maneuver)},
               {"park_time_s", c.park_time_s},
               {"legality", to_string(c.legality.kind)},
               {"risk", c.risk},
               {"fine", c.fine},
               {"walk_m", cost.walk_m},
               {"walk_method", geo::to_string(cost.walk_method)},
               {"nearest_entrance_id", cost.nearest_entrance_id},
               {"c_walk", cost.c_walk},
               {"c_park", cost.c_park},
               {"c_risk", cost.c_risk},
               {"total", cost.total}};
    if (c.legality.kind == LegalityKind::time_limited) {
      props["limit_minutes"] = c.legality.limit_minutes;
    }
    const auto rank = rank_of.find(c.id);
    if (rank != rank_of.end()) {
      props["rank"] = rank->second;
      props["top1"] = rank->second == 1;
    } else {
      props["top1"] = false;
    }
    features.push_back(feature(point_geometry(c.position, scene), std::move(props)));
  }

  return json{{"type", "FeatureCollection"},
              {"features", std::move(features)},
              {"mode", to_string(rec.mode)},
              {"soft_alert", rec.soft_alert}};
}

}  // namespace curbplan
