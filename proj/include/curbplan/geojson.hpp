#pragma once

#include <json.hpp>

#include "curbplan/solver.hpp"

namespace curbplan {

/// RFC 7946 FeatureCollection for a solve: destination, entrances, and every
/// candidate with its full cost properties; the recommendation's top pick is
/// flagged and ranked entries carry their rank. Coordinates are [lon, lat].
nlohmann::json recommendation_geojson(const Scene& scene,
                                      const std::vector<ParkingCandidate>& candidates,
                                      const std::vector<CostBreakdown>& costs,
                                      const std::vector<Entrance>& entrances,
                                      const Recommendation& rec);

}  // namespace curbplan
