#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <vector>

namespace curbplan::geo {

/// Meters per degree of latitude (and of longitude at the equator).
inline constexpr double kMetersPerDegree = 111320.0;

/// Detour factor applied to straight-line distance when no usable
/// sidewalk network is available.
inline constexpr double kFallbackDetourFactor = 1.4;

/// Maximum coordinate offset accepted by the local projection, in degrees.
inline constexpr double kMaxProjectionDelta = 0.05;

/// Position in the scene-local planar frame: meters east (x) and north (y)
/// of the scene origin. |x|, |y| must stay below 10 km.
struct Point {
  double x = 0.0;
  double y = 0.0;
};

inline double euclidean_distance(const Point& a, const Point& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

struct GeoCoord {
  double lat = 0.0;
  double lon = 0.0;
};

/// Equirectangular projection into the local frame. Scenes span well under
/// 1 km, where the projection error is below 0.1%.
/// Throws std::invalid_argument when either delta reaches 0.05 degrees.
Point project_to_local(double lat, double lon, double origin_lat, double origin_lon);

/// Inverse of project_to_local; used for exported (GeoJSON) coordinates.
GeoCoord to_geographic(const Point& p, double origin_lat, double origin_lon);

/// Ordered vertex chain; at least two points, consecutive points distinct.
struct Polyline {
  std::vector<Point> points;

  double length() const;
};

/// Point at arc length s from the start; s is clamped to [0, length].
Point point_at_arc_length(const Polyline& line, double s);

/// Minimum distance from p to any segment of the polyline.
double distance_to_polyline(const Point& p, const Polyline& line);

/// Undirected sidewalk graph. Edge lengths may exceed the straight-line
/// distance between their endpoints (curved sidewalks) but never undercut
/// it by more than 1e-6 m. An empty graph means sidewalk data is
/// unavailable and walking falls back to scaled straight-line distance.
struct PedestrianGraph {
  struct Edge {
    int a = 0;
    int b = 0;
    double length = 0.0;
  };

  std::map<int, Point> nodes;
  std::vector<Edge> edges;

  bool empty() const { return nodes.empty(); }
};

struct SnapResult {
  int node_id = 0;
  double distance = 0.0;
};

/// Nearest graph node by straight-line distance, ties broken by lowest node
/// id. Returns nullopt when the nearest node is farther than tolerance.
std::optional<SnapResult> snap_to_graph(const Point& p, const PedestrianGraph& g,
                                        double tolerance);

/// Dijkstra shortest-path length between two node ids; nullopt when either
/// node is missing or the nodes are in different components.
std::optional<double> shortest_path(const PedestrianGraph& g, int from, int to);

enum class WalkMethod { network, euclidean_fallback };

const char* to_string(WalkMethod m);

struct WalkResult {
  double distance = 0.0;
  WalkMethod method = WalkMethod::euclidean_fallback;
};

struct WalkConfig {
  /// Beyond this snap distance the sidewalk data is treated as unavailable
  /// for that endpoint.
  double snap_tolerance = 50.0;
};

/// Pedestrian walking distance between two points. Uses the sidewalk
/// network (snap leg + shortest path + snap leg) when both endpoints snap
/// into one connected component; otherwise 1.4x straight-line distance.
WalkResult walk_distance(const Point& p, const Point& e, const PedestrianGraph& g,
                         const WalkConfig& cfg = {});

}  // namespace curbplan::geo
