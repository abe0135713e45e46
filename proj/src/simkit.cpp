#include "curbplan/simkit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "curbplan/random.hpp"

namespace curbplan::sim {

using nlohmann::json;

const std::vector<PlatformSpec>& builtin_platforms() {
  static const std::vector<PlatformSpec> platforms = {
      // capacity estimates; HW4 has no official figure, hence the range
      {"HW3", 144.0, 144.0, 0.30, 0.60, 6.0, 12.0},
      {"HW4", 300.0, 500.0, 0.30, 0.60, 4.0, 8.0},
      {"Orin", 254.0, 254.0, 0.30, 0.60, 6.0, 12.0},
      {"Thor", 2000.0, 2000.0, 0.30, 0.60, 4.0, 8.0},
  };
  return platforms;
}

const PlatformSpec* find_platform(const std::vector<PlatformSpec>& platforms,
                                  const std::string& name) {
  for (const auto& p : platforms) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

std::vector<PlatformSpec> platforms_from_json(const json& doc) {
  if (!doc.is_array()) throw std::invalid_argument("platform file: expected a JSON array");
  std::vector<PlatformSpec> out;
  for (const auto& j : doc) {
    PlatformSpec p;
    p.name = j.at("name").get<std::string>();
    if (j.contains("tops")) {
      p.tops_lo = p.tops_hi = j.at("tops").get<double>();
    } else {
      p.tops_lo = j.at("tops_lo").get<double>();
      p.tops_hi = j.at("tops_hi").get<double>();
    }
    p.idle_lo = j.at("idle_lo").get<double>();
    p.idle_hi = j.at("idle_hi").get<double>();
    p.pass_lo = j.at("pass_lo").get<double>();
    p.pass_hi = j.at("pass_hi").get<double>();
    if (!(p.tops_lo > 0.0) || p.tops_lo > p.tops_hi || !(p.idle_lo > 0.0) ||
        p.idle_lo > p.idle_hi || p.idle_hi > 1.0 || !(p.pass_lo > 0.0) ||
        p.pass_lo > p.pass_hi) {
      throw std::invalid_argument("platform file: invalid spec for '" + p.name + "'");
    }
    out.push_back(std::move(p));
  }
  return out;
}

Feasibility feasibility_check(const PlatformSpec& platform, double required_tops) {
  if (!(required_tops > 0.0)) {
    throw std::invalid_argument("required_tops must be positive");
  }
  Feasibility f;
  f.idle_lo_tops = platform.tops_lo * platform.idle_lo;
  f.idle_hi_tops = platform.tops_hi * platform.idle_hi;
  const double ratio = f.idle_lo_tops / required_tops;
  if (f.idle_lo_tops < required_tops && f.idle_hi_tops < required_tops) {
    f.verdict = Verdict::no;
  } else if (f.idle_lo_tops < required_tops) {
    f.verdict = Verdict::marginal;
  } else if (ratio >= 10.0) {
    f.verdict = Verdict::easily;
  } else {
    f.verdict = Verdict::yes;
  }
  return f;
}

double pass_time_estimate(double encode_latency_s, double output_tokens,
                          double tokens_per_second) {
  if (!(encode_latency_s >= 0.0) || !(output_tokens > 0.0) || !(tokens_per_second > 0.0)) {
    throw std::invalid_argument("pass_time_estimate arguments must be positive");
  }
  return encode_latency_s + output_tokens / tokens_per_second;
}

int passes_in_window(double window_s, double pass_time_s) {
  if (!(pass_time_s > 0.0)) throw std::invalid_argument("pass time must be positive");
  if (window_s <= 0.0) return 0;
  return static_cast<int>(std::floor(window_s / pass_time_s));
}

const std::array<ScenarioProfile, 5>& scenario_registry() {
  static const std::array<ScenarioProfile, 5> registry = {{
      {ScenarioKind::deep_queue, 0.45, 0.60, 30.0, 120.0},
      {ScenarioKind::congestion, 0.40, 0.55, 60.0, 300.0},
      {ScenarioKind::front_of_queue, 0.30, 0.45, 30.0, 90.0},
      {ScenarioKind::parking_lot, 0.50, 0.65, 10.0,
       std::numeric_limits<double>::infinity()},
      {ScenarioKind::left_turn_wait, 0.25, 0.40, 15.0, 45.0},
  }};
  return registry;
}

const ScenarioProfile& scenario_profile(ScenarioKind kind) {
  for (const auto& p : scenario_registry()) {
    if (p.kind == kind) return p;
  }
  return scenario_registry()[0];
}

ScheduleResult schedule_passes(const DriveTimeline& timeline, const PlatformSpec& platform,
                               int required_passes, double required_tops, uint64_t seed) {
  if (required_passes < 1) {
    throw std::invalid_argument("required_passes must be at least 1");
  }
  Rng rng(seed);
  ScheduleResult result;
  result.pass_time = rng.uniform(platform.pass_lo, platform.pass_hi);

  for (size_t w = 0; w < timeline.windows.size() && result.completed < required_passes;
       ++w) {
    const auto& window = timeline.windows[w];
    // conservative capacity estimate gates window eligibility
    if (window.idle_fraction * platform.tops_lo < required_tops) continue;

    const int fit = passes_in_window(window.duration, result.pass_time);
    const int runs = std::min(fit, required_passes - result.completed);
    for (int i = 0; i < runs; ++i) {
      const double start = window.start + i * result.pass_time;
      result.log.push_back({start, start + result.pass_time, static_cast<int>(w)});
    }
    result.completed += runs;
    // an attempt that would cross the window end is killed with zero credit
    if (result.completed < required_passes &&
        window.duration - fit * result.pass_time > 0.0) {
      result.preempted += 1;
    }
  }
  result.analysis_complete = result.completed >= required_passes;
  return result;
}

AssetManifest AssetManifest::defaults() {
  return {{
      {"satellite+structured", 2.0},
      {"street_view", 7.5},
      {"extended", 50.0},
  }};
}

std::vector<double> simulate_precache(const AssetManifest& manifest, double bandwidth_mbps,
                                      bool cache_hit) {
  if (!(bandwidth_mbps > 0.0)) throw std::invalid_argument("bandwidth must be positive");
  std::vector<double> out;
  out.reserve(manifest.tiers.size());
  if (cache_hit) {
    out.assign(manifest.tiers.size(), 0.0);
    return out;
  }
  double t = 0.0;
  for (const auto& tier : manifest.tiers) {
    t += tier.size_mb * 8.0 / bandwidth_mbps;
    out.push_back(t);
  }
  return out;
}

std::map<ScenarioKind, double> default_mix() {
  return {{ScenarioKind::deep_queue, 0.2},
          {ScenarioKind::congestion, 0.2},
          {ScenarioKind::front_of_queue, 0.2},
          {ScenarioKind::parking_lot, 0.2},
          {ScenarioKind::left_turn_wait, 0.2}};
}

DriveTimeline generate_timeline(uint64_t seed, int n_windows,
                                const std::map<ScenarioKind, double>& mix) {
  double weight_sum = 0.0;
  for (const auto& [kind, w] : mix) {
    if (w < 0.0) throw std::invalid_argument("scenario weights must be non-negative");
    weight_sum += w;
  }
  if (std::abs(weight_sum - 1.0) > 1e-9) {
    throw std::invalid_argument("scenario mix weights must sum to 1");
  }

  Rng rng(seed);
  DriveTimeline timeline;
  double t = 0.0;
  for (int i = 0; i < n_windows; ++i) {
    t += rng.uniform(20.0, 120.0);  // driving gap

    const double u = rng.uniform();
    double acc = 0.0;
    ScenarioKind kind = ScenarioKind::deep_queue;
    // map iteration is enum-ordered, so the cumulative walk is deterministic
    for (const auto& [k, w] : mix) {
      acc += w;
      kind = k;
      if (u < acc) break;
    }

    const auto& profile = scenario_profile(kind);
    const double hi = std::min(profile.duration_hi, 300.0);
    ComputeWindow window;
    window.scenario = kind;
    window.start = t;
    window.duration = rng.uniform(profile.duration_lo, hi);
    window.idle_fraction = rng.uniform(profile.idle_lo, profile.idle_hi);
    t += window.duration;
    timeline.windows.push_back(window);
  }
  timeline.arrival = t + rng.uniform(20.0, 120.0);
  return timeline;
}

json timeline_to_json(const DriveTimeline& timeline) {
  json windows = json::array();
  for (const auto& w : timeline.windows) {
    windows.push_back(json{{"scenario", to_string(w.scenario)},
                           {"start", w.start},
                           {"duration", w.duration},
                           {"idle_fraction", w.idle_fraction}});
  }
  return json{{"windows", windows}, {"arrival", timeline.arrival}};
}

DriveTimeline timeline_from_json(const json& doc) {
  DriveTimeline timeline;
  if (!doc.is_object() || !doc.contains("windows") || !doc["windows"].is_array() ||
      !doc.contains("arrival") || !doc["arrival"].is_number()) {
    throw std::invalid_argument("timeline file: expected {windows: [...], arrival: n}");
  }
  for (const auto& j : doc["windows"]) {
    ComputeWindow w;
    w.scenario = scenario_from_string(j.at("scenario").get<std::string>());
    w.start = j.at("start").get<double>();
    w.duration = j.at("duration").get<double>();
    w.idle_fraction = j.at("idle_fraction").get<double>();
    timeline.windows.push_back(w);
  }
  timeline.arrival = doc["arrival"].get<double>();

  double prev_end = -std::numeric_limits<double>::infinity();
  for (const auto& w : timeline.windows) {
    if (w.start < prev_end) {
      throw std::invalid_argument("timeline file: windows overlap or are out of order");
    }
    if (w.start + w.duration > timeline.arrival) {
      throw std::invalid_argument("timeline file: window extends past arrival");
    }
    prev_end = w.start + w.duration;
  }
  return timeline;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::no: return "no";
    case Verdict::marginal: return "marginal";
    case Verdict::yes: return "yes";
    case Verdict::easily: return "easily";
  }
  return "no";
}

const char* to_string(ScenarioKind k) {
  switch (k) {
    case ScenarioKind::deep_queue: return "deep_queue";
    case ScenarioKind::congestion: return "congestion";
    case ScenarioKind::front_of_queue: return "front_of_queue";
    case ScenarioKind::parking_lot: return "parking_lot";
    case ScenarioKind::left_turn_wait: return "left_turn_wait";
  }
  return "deep_queue";
}

ScenarioKind scenario_from_string(const std::string& s) {
  if (s == "deep_queue") return ScenarioKind::deep_queue;
  if (s == "congestion") return ScenarioKind::congestion;
  if (s == "front_of_queue") return ScenarioKind::front_of_queue;
  if (s == "parking_lot") return ScenarioKind::parking_lot;
  if (s == "left_turn_wait") return ScenarioKind::left_turn_wait;
  throw std::invalid_argument("unknown scenario '" + s + "'");
}

}  // namespace curbplan::sim
