#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <json.hpp>

#include "curbplan/scene.hpp"

namespace curbplan {

/// Structured output of one destination imagery analysis (entrance
/// candidates plus decoded parking signs).
struct AnalyzerReport {
  std::vector<Entrance> entrances;  // source = vlm
  std::vector<SignReading> sign_readings;
  int passes_used = 0;
};

nlohmann::json to_json(const AnalyzerReport& report);

/// Strict schema validation; nullopt for anything malformed (missing keys,
/// wrong types, confidences outside (0, 1], non-finite coordinates).
std::optional<AnalyzerReport> parse_analyzer_report(const nlohmann::json& j);

enum class Route { crowdsourced, analyzer };
enum class DispatchReason { frequent, cold_start, long_tail, dynamic_change };

const char* to_string(Route r);
const char* to_string(DispatchReason r);

struct DispatchDecision {
  Route route = Route::analyzer;
  DispatchReason reason = DispatchReason::cold_start;
};

/// Crowdsourced history is the primary source once a merchant has 10+
/// visits, a usable heatmap, and no pending change flag; everything else
/// goes to the analyzer.
DispatchDecision dispatch(const MerchantRecord& merchant);

struct HeatmapPick {
  geo::Point position;
  double weight = 0.0;
};

/// Top-k heatmap cells by weight (ties by cell order), skipping cells whose
/// nearest curb segment is illegal at t. Empty when every cell is blocked.
std::vector<HeatmapPick> heatmap_recommend(const MerchantRecord& merchant,
                                           const Scene& scene, int weekly_minute, int k);

struct NoiseModel {
  double position_sigma = 0.0;  // meters, isotropic
  double miss_rate = 0.0;       // per-entrance drop probability
  double misread_rate = 0.0;    // per-sign legibility flip probability
};

/// Annotation-driven stand-in for imagery analysis: emits the scene's
/// ground-truth entrances and sign readings under the given noise model.
/// Entrance confidence is 1/(1 + sigma/10). Deterministic in the seed.
/// Returns nullopt when the scene has no ground-truth block.
std::optional<AnalyzerReport> mock_analyze(const Scene& scene, const NoiseModel& noise,
                                           uint64_t seed);

/// Entrance set fed to the solver: structured entrances from the scene,
/// unioned with analyzer output when that route was taken, de-duplicated by
/// merging pairs within 3 m (higher confidence wins). Never empty: with no
/// information at all, a low-confidence synthetic entrance (id -1) at the
/// destination keeps the optimization well-defined.
std::vector<Entrance> infer_entrances(const Scene& scene, const DispatchDecision& decision,
                                      const AnalyzerReport* report = nullptr);

inline constexpr int kSyntheticEntranceId = -1;

}  // namespace curbplan
