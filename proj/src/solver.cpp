#include "curbplan/solver.hpp"

#include <algorithm>
#include <stdexcept>

namespace curbplan {

CostBreakdown cost_breakdown(const ParkingCandidate& candidate,
                             const std::vector<Entrance>& entrances, const Scene& scene,
                             const SolveConfig& cfg) {
  if (entrances.empty()) {
    throw std::invalid_argument("cost_breakdown requires at least one entrance");
  }

  geo::WalkResult best{};
  int best_id = 0;
  bool first = true;
  for (const auto& e : entrances) {
    const auto walk =
        geo::walk_distance(candidate.position, e.position, scene.pedestrian_graph, cfg.walk);
    if (first || walk.distance < best.distance ||
        (walk.distance == best.distance && e.id < best_id)) {
      best = walk;
      best_id = e.id;
      first = false;
    }
  }

  CostBreakdown out;
  const double rate = cfg.wage / 3600.0;  // USD per second
  out.walk_m = best.distance;
  out.walk_method = best.method;
  out.nearest_entrance_id = best_id;
  out.c_walk = (best.distance / cfg.walk_speed) * rate;
  out.c_park = candidate.park_time_s * rate;
  out.c_risk = candidate.risk * candidate.fine;
  out.total = out.c_walk + out.c_park + out.c_risk;
  return out;
}

std::vector<CostBreakdown> evaluate_all(const Scene& scene,
                                        const std::vector<ParkingCandidate>& candidates,
                                        const std::vector<Entrance>& entrances,
                                        const SolveConfig& cfg) {
  std::vector<CostBreakdown> out;
  out.reserve(candidates.size());
  for (const auto& c : candidates) {
    out.push_back(cost_breakdown(c, entrances, scene, cfg));
  }
  return out;
}

bool entry_less(const RankedEntry& a, const RankedEntry& b) {
  if (a.cost.total != b.cost.total) return a.cost.total < b.cost.total;
  if (a.cost.walk_m != b.cost.walk_m) return a.cost.walk_m < b.cost.walk_m;
  if (a.candidate.risk != b.candidate.risk) return a.candidate.risk < b.candidate.risk;
  return a.candidate.id < b.candidate.id;
}

Recommendation solve(const Scene& scene, const std::vector<ParkingCandidate>& candidates,
                     const std::vector<Entrance>& entrances, const SolveConfig& cfg) {
  Recommendation rec;
  if (candidates.empty()) {
    rec.mode = SolveMode::infeasible;
    return rec;
  }
  if (entrances.empty()) {
    throw std::invalid_argument("solve requires at least one entrance");
  }

  const auto costs = evaluate_all(scene, candidates, entrances, cfg);

  std::vector<RankedEntry> hard;
  std::vector<RankedEntry> soft;
  for (size_t i = 0; i < candidates.size(); ++i) {
    const RankedEntry entry{candidates[i], costs[i]};
    if (candidates[i].legality.kind != LegalityKind::illegal) {
      hard.push_back(entry);
    } else if (candidates[i].risk < cfg.tau) {
      soft.push_back(entry);
    }
  }

  if (!hard.empty()) {
    rec.mode = SolveMode::hard;
    rec.entries = std::move(hard);
  } else if (!soft.empty()) {
    rec.mode = SolveMode::soft;
    rec.soft_alert = true;
    rec.entries = std::move(soft);
  } else {
    rec.mode = SolveMode::infeasible;
    return rec;
  }

  std::sort(rec.entries.begin(), rec.entries.end(), entry_less);
  if (cfg.top_k > 0 && rec.entries.size() > static_cast<size_t>(cfg.top_k)) {
    rec.entries.resize(cfg.top_k);
  }
  return rec;
}

const char* to_string(SolveMode m) {
  switch (m) {
    case SolveMode::hard: return "hard";
    case SolveMode::soft: return "soft";
    case SolveMode::infeasible: return "infeasible";
  }
  return "infeasible";
}

}  // namespace curbplan
