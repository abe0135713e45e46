#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace curbplan::sim {

/// Compute platform: capacity estimate range (TOPS), reallocatable idle
/// fraction range, and the per-pass inference time band for the model class
/// it can host.
struct PlatformSpec {
  std::string name;
  double tops_lo = 0.0;
  double tops_hi = 0.0;
  double idle_lo = 0.0;
  double idle_hi = 0.0;
  double pass_lo = 0.0;  // seconds per analysis pass
  double pass_hi = 0.0;
};

const std::vector<PlatformSpec>& builtin_platforms();
const PlatformSpec* find_platform(const std::vector<PlatformSpec>& platforms,
                                  const std::string& name);
std::vector<PlatformSpec> platforms_from_json(const nlohmann::json& doc);

enum class Verdict { no, marginal, yes, easily };

const char* to_string(Verdict v);

struct Feasibility {
  double idle_lo_tops = 0.0;
  double idle_hi_tops = 0.0;
  Verdict verdict = Verdict::no;
};

/// Can the platform's reallocatable compute host a model needing
/// required_tops? no: even the best case falls short; marginal: only the
/// optimistic end clears it; yes: the conservative end clears it; easily:
/// conservative end is 10x the requirement or more.
Feasibility feasibility_check(const PlatformSpec& platform, double required_tops = 60.0);

/// encode latency + output tokens / decode throughput.
double pass_time_estimate(double encode_latency_s, double output_tokens,
                          double tokens_per_second);

/// floor(window / pass): whole passes that fit a window.
int passes_in_window(double window_s, double pass_time_s);

enum class ScenarioKind { deep_queue, congestion, front_of_queue, parking_lot, left_turn_wait };

const char* to_string(ScenarioKind k);
ScenarioKind scenario_from_string(const std::string& s);

/// Low-risk driving scenario with its reallocatable-compute fraction range
/// and typical duration band. parking_lot has no upper duration bound
/// (infinity); the timeline generator caps its draws at 300 s.
struct ScenarioProfile {
  ScenarioKind kind = ScenarioKind::deep_queue;
  double idle_lo = 0.0;
  double idle_hi = 0.0;
  double duration_lo = 0.0;
  double duration_hi = 0.0;
};

const std::array<ScenarioProfile, 5>& scenario_registry();
const ScenarioProfile& scenario_profile(ScenarioKind kind);

struct ComputeWindow {
  ScenarioKind scenario = ScenarioKind::deep_queue;
  double start = 0.0;     // seconds on the drive timeline
  double duration = 0.0;  // seconds
  double idle_fraction = 0.0;
};

struct DriveTimeline {
  std::vector<ComputeWindow> windows;  // non-overlapping, ascending start
  double arrival = 0.0;                // seconds; all windows end before this
};

nlohmann::json timeline_to_json(const DriveTimeline& timeline);
DriveTimeline timeline_from_json(const nlohmann::json& doc);

struct PassLog {
  double start = 0.0;
  double end = 0.0;
  int window_index = 0;
};

struct ScheduleResult {
  int completed = 0;
  int preempted = 0;  // attempts cut off at a window boundary, zero credit
  std::vector<PassLog> log;
  bool analysis_complete = false;
  double pass_time = 0.0;  // seconds, drawn once per run
};

/// Packs analysis passes into the timeline's eligible windows. A window is
/// eligible when idle_fraction x the platform's conservative capacity
/// reaches required_tops. Passes run back-to-back from the window start; a
/// pass that cannot finish inside the window is never credited (it would be
/// killed at the boundary) and is counted as preempted. The per-pass time
/// is drawn once per run, uniformly in the platform's pass band.
ScheduleResult schedule_passes(const DriveTimeline& timeline, const PlatformSpec& platform,
                               int required_passes, double required_tops, uint64_t seed);

struct AssetTier {
  std::string label;
  double size_mb = 0.0;
};

struct AssetManifest {
  std::vector<AssetTier> tiers;

  /// satellite+structured 2 MB, street view 7.5 MB, extended 50 MB.
  static AssetManifest defaults();
};

/// Completion time of each tier under strictly sequential priority
/// download: completion(i) = sum of earlier-or-equal tier sizes x 8 /
/// bandwidth. A cache hit completes every tier at t = 0.
std::vector<double> simulate_precache(const AssetManifest& manifest, double bandwidth_mbps,
                                      bool cache_hit);

/// Seeded random drive: windows drawn by scenario mix (weights sum to 1),
/// scenario-banded durations and idle fractions, separated by 20-120 s
/// driving gaps.
DriveTimeline generate_timeline(uint64_t seed, int n_windows,
                                const std::map<ScenarioKind, double>& mix);

/// Even mix over all five scenarios.
std::map<ScenarioKind, double> default_mix();

}  // namespace curbplan::sim
