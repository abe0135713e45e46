#include "curbplan/geo.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>
#include <unordered_map>

namespace curbplan::geo {

Point project_to_local(double lat, double lon, double origin_lat, double origin_lon) {
  const double dlat = lat - origin_lat;
  const double dlon = lon - origin_lon;
  if (!(std::abs(dlat) < kMaxProjectionDelta) || !(std::abs(dlon) < kMaxProjectionDelta)) {
    throw std::invalid_argument("coordinate delta exceeds 0.05 degrees: scene must stay local");
  }
  Point p;
  p.y = dlat * kMetersPerDegree;
  p.x = dlon * kMetersPerDegree * std::cos(origin_lat * M_PI / 180.0);
  return p;
}

GeoCoord to_geographic(const Point& p, double origin_lat, double origin_lon) {
  GeoCoord c;
  c.lat = origin_lat + p.y / kMetersPerDegree;
  c.lon = origin_lon + p.x / (kMetersPerDegree * std::cos(origin_lat * M_PI / 180.0));
  return c;
}

double Polyline::length() const {
  double total = 0.0;
  for (size_t i = 1; i < points.size(); ++i) {
    total += euclidean_distance(points[i - 1], points[i]);
  }
  return total;
}

Point point_at_arc_length(const Polyline& line, double s) {
  if (line.points.empty()) return {};
  if (s <= 0.0) return line.points.front();
  for (size_t i = 1; i < line.points.size(); ++i) {
    const Point& a = line.points[i - 1];
    const Point& b = line.points[i];
    const double seg = euclidean_distance(a, b);
    if (s <= seg) {
      const double t = seg > 0.0 ? s / seg : 0.0;
      return {a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
    }
    s -= seg;
  }
  return line.points.back();
}

namespace {

double point_segment_distance(const Point& p, const Point& a, const Point& b) {
  const double vx = b.x - a.x;
  const double vy = b.y - a.y;
  const double len2 = vx * vx + vy * vy;
  double t = 0.0;
  if (len2 > 0.0) {
    t = ((p.x - a.x) * vx + (p.y - a.y) * vy) / len2;
    t = std::clamp(t, 0.0, 1.0);
  }
  const Point proj{a.x + t * vx, a.y + t * vy};
  return euclidean_distance(p, proj);
}

}  // namespace

double distance_to_polyline(const Point& p, const Polyline& line) {
  if (line.points.empty()) return std::numeric_limits<double>::infinity();
  if (line.points.size() == 1) return euclidean_distance(p, line.points.front());
  double best = std::numeric_limits<double>::infinity();
  for (size_t i = 1; i < line.points.size(); ++i) {
    best = std::min(best, point_segment_distance(p, line.points[i - 1], line.points[i]));
  }
  return best;
}

std::optional<SnapResult> snap_to_graph(const Point& p, const PedestrianGraph& g,
                                        double tolerance) {
  std::optional<SnapResult> best;
  // std::map iteration is id-ascending, so strict < keeps the lowest id on ties.
  for (const auto& [id, pos] : g.nodes) {
    const double d = euclidean_distance(p, pos);
    if (!best || d < best->distance) {
      best = SnapResult{id, d};
    }
  }
  if (!best || best->distance > tolerance) return std::nullopt;
  return best;
}

std::optional<double> shortest_path(const PedestrianGraph& g, int from, int to) {
  if (!g.nodes.count(from) || !g.nodes.count(to)) return std::nullopt;
  if (from == to) return 0.0;

  std::unordered_map<int, std::vector<std::pair<int, double>>> adj;
  for (const auto& e : g.edges) {
    adj[e.a].emplace_back(e.b, e.length);
    adj[e.b].emplace_back(e.a, e.length);
  }

  std::unordered_map<int, double> dist;
  using QItem = std::pair<double, int>;
  std::priority_queue<QItem, std::vector<QItem>, std::greater<>> queue;
  dist[from] = 0.0;
  queue.emplace(0.0, from);
  while (!queue.empty()) {
    auto [d, u] = queue.top();
    queue.pop();
    auto it = dist.find(u);
    if (it != dist.end() && d > it->second) continue;
    if (u == to) return d;
    for (const auto& [v, w] : adj[u]) {
      const double nd = d + w;
      auto dit = dist.find(v);
      if (dit == dist.end() || nd < dit->second) {
        dist[v] = nd;
        queue.emplace(nd, v);
      }
    }
  }
  return std::nullopt;
}

WalkResult walk_distance(const Point& p, const Point& e, const PedestrianGraph& g,
                         const WalkConfig& cfg) {
  const auto fallback = [&]() -> WalkResult {
    return {kFallbackDetourFactor * euclidean_distance(p, e), WalkMethod::euclidean_fallback};
  };
  if (g.empty()) return fallback();
  const auto sp = snap_to_graph(p, g, cfg.snap_tolerance);
  const auto se = snap_to_graph(e, g, cfg.snap_tolerance);
  if (!sp || !se) return fallback();
  // Canonical evaluation order so walk_distance(p, e) and walk_distance(e, p)
  // are bit-identical: path from the lower node id, snap legs summed
  // shortest-first.
  const auto path = shortest_path(g, std::min(sp->node_id, se->node_id),
                                  std::max(sp->node_id, se->node_id));
  if (!path) return fallback();
  const double lo = std::min(sp->distance, se->distance);
  const double hi = std::max(sp->distance, se->distance);
  return {lo + hi + *path, WalkMethod::network};
}

const char* to_string(WalkMethod m) {
  return m == WalkMethod::network ? "network" : "euclidean_fallback";
}

}  // namespace curbplan::geo
