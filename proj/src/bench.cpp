#include "curbplan/bench.hpp"

#include <algorithm>
#include <stdexcept>

#include <fmt/format.h>

#include "curbplan/econ.hpp"
#include "curbplan/random.hpp"

namespace curbplan {

PolicyOutcome evaluate_policy(PolicyId policy,
                              const std::vector<ParkingCandidate>& candidates,
                              const std::vector<CostBreakdown>& costs,
                              const Recommendation& dapp_result) {
  PolicyOutcome out;
  switch (policy) {
    case PolicyId::dapp: {
      out.mode = dapp_result.mode;
      if (!dapp_result.entries.empty()) {
        out.chosen = true;
        out.candidate = dapp_result.entries.front().candidate;
        out.cost = dapp_result.entries.front().cost;
      }
      return out;
    }
    case PolicyId::legal_nearest:
    case PolicyId::nearest_any: {
      const bool legal_only = policy == PolicyId::legal_nearest;
      int best = -1;
      for (size_t i = 0; i < candidates.size(); ++i) {
        if (legal_only && candidates[i].legality.kind == LegalityKind::illegal) continue;
        if (best < 0 || costs[i].walk_m < costs[best].walk_m ||
            (costs[i].walk_m == costs[best].walk_m &&
             candidates[i].id < candidates[best].id)) {
          best = static_cast<int>(i);
        }
      }
      if (best >= 0) {
        out.chosen = true;
        out.mode = SolveMode::hard;
        out.candidate = candidates[best];
        out.cost = costs[best];
      }
      return out;
    }
  }
  return out;
}

BenchResult run_bench(const std::vector<Scene>& scenes,
                      const std::vector<PolicyId>& policies, const BenchConfig& cfg) {
  BenchResult result;
  for (const auto policy : policies) {
    result.outcomes[policy] = {};
  }

  for (size_t i = 0; i < scenes.size(); ++i) {
    const Scene& scene = scenes[i];
    const auto decision = dispatch(scene.merchant);
    std::optional<AnalyzerReport> report;
    if (decision.route == Route::analyzer) {
      report = mock_analyze(scene, cfg.noise, mix_seed(cfg.seed, i));
    }
    const auto* report_ptr = report ? &*report : nullptr;
    const auto* readings = report ? &report->sign_readings : nullptr;

    auto candidate_cfg = cfg.candidates;
    candidate_cfg.expected_dwell = cfg.solve.expected_dwell;
    const auto candidates = generate_candidates(scene, candidate_cfg, readings);
    const auto entrances = infer_entrances(scene, decision, report_ptr);
    const auto costs = evaluate_all(scene, candidates, entrances, cfg.solve);
    const auto dapp_result = solve(scene, candidates, entrances, cfg.solve);

    for (const auto policy : policies) {
      result.outcomes[policy].push_back(
          evaluate_policy(policy, candidates, costs, dapp_result));
    }
  }

  for (const auto policy : policies) {
    const auto& outcomes = result.outcomes[policy];
    PolicyAggregate agg;
    agg.policy = to_string(policy);
    agg.scenes = static_cast<int>(outcomes.size());
    std::vector<std::pair<double, double>> risk_fine;
    double walk_sum = 0.0;
    double total_sum = 0.0;
    int soft = 0;
    for (const auto& o : outcomes) {
      if (o.chosen) {
        ++agg.chosen;
        walk_sum += o.cost.walk_m;
        total_sum += o.cost.total;
        risk_fine.emplace_back(o.candidate.risk, o.candidate.fine);
      }
      if (o.mode == SolveMode::soft) ++soft;
    }
    agg.mean_walk_m = agg.chosen ? walk_sum / agg.chosen : 0.0;
    agg.mean_total_usd = agg.chosen ? total_sum / agg.chosen : 0.0;
    agg.fine_exposure_usd = econ::fine_exposure(risk_fine);
    agg.soft_rate = agg.scenes ? static_cast<double>(soft) / agg.scenes : 0.0;
    agg.infeasible_rate =
        agg.scenes ? static_cast<double>(agg.scenes - agg.chosen) / agg.scenes : 0.0;
    result.rows.push_back(std::move(agg));
  }
  return result;
}

std::string csv_field(const std::string& value) {
  if (value.find_first_of(",\"\r\n") == std::string::npos) return value;
  std::string quoted = "\"";
  for (char c : value) {
    if (c == '"') quoted += "\"\"";
    else quoted += c;
  }
  quoted += "\"";
  return quoted;
}

std::string bench_to_csv(const BenchResult& result) {
  std::string out =
      "policy,scenes,chosen,mean_walk_m,mean_total_usd,fine_exposure_usd,"
      "soft_rate,infeasible_rate\r\n";
  for (const auto& row : result.rows) {
    out += fmt::format("{},{},{},{},{},{},{},{}\r\n", csv_field(row.policy), row.scenes,
                       row.chosen, row.mean_walk_m, row.mean_total_usd,
                       row.fine_exposure_usd, row.soft_rate, row.infeasible_rate);
  }
  return out;
}

std::string bench_to_markdown(const BenchResult& result) {
  std::string out =
      "| policy | scenes | chosen | mean walk (m) | mean total (USD) | fine exposure "
      "(USD) | soft rate | infeasible rate |\n"
      "|---|---|---|---|---|---|---|---|\n";
  for (const auto& row : result.rows) {
    out += fmt::format("| {} | {} | {} | {:.1f} | {:.4f} | {:.2f} | {:.3f} | {:.3f} |\n",
                       row.policy, row.scenes, row.chosen, row.mean_walk_m,
                       row.mean_total_usd, row.fine_exposure_usd, row.soft_rate,
                       row.infeasible_rate);
  }
  return out;
}

const char* to_string(PolicyId p) {
  switch (p) {
    case PolicyId::dapp: return "dapp";
    case PolicyId::legal_nearest: return "legal_nearest";
    case PolicyId::nearest_any: return "nearest_any";
  }
  return "dapp";
}

PolicyId policy_from_string(const std::string& s) {
  if (s == "dapp") return PolicyId::dapp;
  if (s == "legal_nearest") return PolicyId::legal_nearest;
  if (s == "nearest_any") return PolicyId::nearest_any;
  throw std::invalid_argument("unknown policy '" + s + "'");
}

}  // namespace curbplan
