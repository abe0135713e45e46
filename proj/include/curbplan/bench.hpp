#pragma once

#include <map>
#include <string>
#include <vector>

#include "curbplan/scene_gen.hpp"
#include "curbplan/solver.hpp"

namespace curbplan {

/// Parking policies compared by the benchmark:
///   dapp          - the full cost-minimizing solver
///   legal_nearest - shortest walk among legal/time-limited candidates,
///                   ignoring risk and maneuver time
///   nearest_any   - shortest walk over every candidate, legality ignored
enum class PolicyId { dapp, legal_nearest, nearest_any };

const char* to_string(PolicyId p);
PolicyId policy_from_string(const std::string& s);

struct PolicyOutcome {
  bool chosen = false;
  SolveMode mode = SolveMode::infeasible;
  ParkingCandidate candidate;
  CostBreakdown cost;
};

/// One policy's pick on a fixed candidate set (costs aligned by index).
PolicyOutcome evaluate_policy(PolicyId policy,
                              const std::vector<ParkingCandidate>& candidates,
                              const std::vector<CostBreakdown>& costs,
                              const Recommendation& dapp_result);

struct PolicyAggregate {
  std::string policy;
  int scenes = 0;
  int chosen = 0;
  double mean_walk_m = 0.0;       // over scenes where the policy picked a spot
  double mean_total_usd = 0.0;
  double fine_exposure_usd = 0.0; // expected fines summed over picks
  double soft_rate = 0.0;
  double infeasible_rate = 0.0;
};

struct BenchConfig {
  SolveConfig solve;
  CandidateConfig candidates;
  NoiseModel noise;
  uint64_t seed = 0;
};

struct BenchResult {
  std::vector<PolicyAggregate> rows;  // in requested policy order
  std::map<PolicyId, std::vector<PolicyOutcome>> outcomes;  // per scene
};

/// Runs every policy over every scene at the scene's analysis time. All
/// policies see identical candidates, entrances and cost breakdowns.
BenchResult run_bench(const std::vector<Scene>& scenes,
                      const std::vector<PolicyId>& policies, const BenchConfig& cfg);

std::string bench_to_csv(const BenchResult& result);
std::string bench_to_markdown(const BenchResult& result);

/// RFC 4180 field quoting.
std::string csv_field(const std::string& value);

}  // namespace curbplan
