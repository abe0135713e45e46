#pragma once

#include <vector>

#include "curbplan/analyzer.hpp"
#include "curbplan/candidates.hpp"
#include "curbplan/scene.hpp"

namespace curbplan {

struct SolveConfig {
  double wage = 20.0;           // USD per hour
  double walk_speed = 1.2;      // m/s
  double tau = 0.1;             // soft-mode risk ceiling, (0, 1]
  double expected_dwell = 10.0; // minutes
  int top_k = 5;
  geo::WalkConfig walk;
};

/// Monetized cost of parking at one candidate:
///   c_walk = walk_time * wage,  c_park = maneuver time * wage,
///   c_risk = risk * fine,       total = c_walk + c_park + c_risk
struct CostBreakdown {
  double c_walk = 0.0;
  double c_park = 0.0;
  double c_risk = 0.0;
  double total = 0.0;
  double walk_m = 0.0;
  geo::WalkMethod walk_method = geo::WalkMethod::euclidean_fallback;
  int nearest_entrance_id = 0;
};

enum class SolveMode { hard, soft, infeasible };

const char* to_string(SolveMode m);

struct RankedEntry {
  ParkingCandidate candidate;
  CostBreakdown cost;
};

struct Recommendation {
  SolveMode mode = SolveMode::infeasible;
  std::vector<RankedEntry> entries;  // ascending total, truncated to top_k
  bool soft_alert = false;           // set when only risk-tolerant options remain
};

/// Cost of one candidate against its best entrance (minimum walk distance,
/// ties to the lowest entrance id). Requires a non-empty entrance list.
CostBreakdown cost_breakdown(const ParkingCandidate& candidate,
                             const std::vector<Entrance>& entrances, const Scene& scene,
                             const SolveConfig& cfg);

/// Ranked recommendation. Hard mode optimizes over legal and time-limited
/// candidates; if none exist, soft mode admits candidates with risk below
/// tau and raises the alert flag; if that set is empty too the result is
/// infeasible. Entries are ordered by (total, walk_m, risk, candidate id).
Recommendation solve(const Scene& scene, const std::vector<ParkingCandidate>& candidates,
                     const std::vector<Entrance>& entrances, const SolveConfig& cfg = {});

/// Breakdown for every candidate, in candidate order. Shared by solve, the
/// policy benchmark, and the GeoJSON export.
std::vector<CostBreakdown> evaluate_all(const Scene& scene,
                                        const std::vector<ParkingCandidate>& candidates,
                                        const std::vector<Entrance>& entrances,
                                        const SolveConfig& cfg);

/// Ordering used for recommendation entries.
bool entry_less(const RankedEntry& a, const RankedEntry& b);

}  // namespace curbplan
