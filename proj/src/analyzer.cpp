#include "curbplan/analyzer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "curbplan/random.hpp"

namespace curbplan {

using nlohmann::json;

DispatchDecision dispatch(const MerchantRecord& merchant) {
  if (merchant.visit_count >= 10 && !merchant.heatmap.empty() &&
      !merchant.dynamic_change_flag) {
    return {Route::crowdsourced, DispatchReason::frequent};
  }
  if (merchant.visit_count == 0) return {Route::analyzer, DispatchReason::cold_start};
  if (merchant.dynamic_change_flag) return {Route::analyzer, DispatchReason::dynamic_change};
  return {Route::analyzer, DispatchReason::long_tail};
}

std::vector<HeatmapPick> heatmap_recommend(const MerchantRecord& merchant,
                                           const Scene& scene, int weekly_minute, int k) {
  std::vector<size_t> order(merchant.heatmap.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return merchant.heatmap[a].weight > merchant.heatmap[b].weight;
  });

  std::vector<HeatmapPick> out;
  for (size_t idx : order) {
    if (static_cast<int>(out.size()) >= k) break;
    const auto& cell = merchant.heatmap[idx];

    // legality of the curb segment nearest to the cell
    const CurbSegment* nearest = nullptr;
    double best = std::numeric_limits<double>::infinity();
    for (const auto& seg : scene.curb_segments) {
      const double d = geo::distance_to_polyline(cell.position, seg.geometry);
      if (d < best) {
        best = d;
        nearest = &seg;
      }
    }
    if (nearest &&
        legality_at(scene.rules, nearest->id, weekly_minute).kind == LegalityKind::illegal) {
      continue;
    }
    out.push_back({cell.position, cell.weight});
  }
  return out;
}

std::optional<AnalyzerReport> mock_analyze(const Scene& scene, const NoiseModel& noise,
                                           uint64_t seed) {
  if (!scene.ground_truth) return std::nullopt;
  Rng rng(seed);
  AnalyzerReport report;
  const double confidence =
      std::min(1.0, 1.0 / (1.0 + noise.position_sigma / 10.0));
  for (const auto& truth : scene.ground_truth->entrances) {
    if (rng.uniform() >= 1.0 - noise.miss_rate) continue;
    Entrance e = truth;
    e.source = EntranceSource::vlm;
    e.confidence = confidence;
    if (noise.position_sigma > 0.0) {
      e.position.x += rng.normal() * noise.position_sigma;
      e.position.y += rng.normal() * noise.position_sigma;
    }
    report.entrances.push_back(e);
  }
  for (const auto& sign : scene.ground_truth->signs) {
    SignReading r{sign.rule_id, sign.legible, sign.confidence};
    if (rng.bernoulli(noise.misread_rate)) r.legible = !r.legible;
    report.sign_readings.push_back(r);
  }
  report.passes_used = 2;  // satellite + street view
  return report;
}

std::vector<Entrance> infer_entrances(const Scene& scene, const DispatchDecision& decision,
                                      const AnalyzerReport* report) {
  std::vector<Entrance> out = scene.listed_entrances();
  if (decision.route == Route::analyzer && report) {
    for (const auto& candidate : report->entrances) {
      bool merged = false;
      for (auto& existing : out) {
        if (geo::euclidean_distance(existing.position, candidate.position) <= 3.0) {
          if (candidate.confidence > existing.confidence) existing = candidate;
          merged = true;
          break;
        }
      }
      if (!merged) out.push_back(candidate);
    }
  }
  if (out.empty()) {
    out.push_back({kSyntheticEntranceId, scene.destination, EntranceKind::front, 0.1,
                   EntranceSource::vlm});
  }
  return out;
}

json to_json(const AnalyzerReport& report) {
  json entrances = json::array();
  for (const auto& e : report.entrances) {
    entrances.push_back(json{{"id", e.id},
                             {"position", json::array({e.position.x, e.position.y})},
                             {"kind", to_string(e.kind)},
                             {"confidence", e.confidence}});
  }
  json readings = json::array();
  for (const auto& s : report.sign_readings) {
    readings.push_back(json{
        {"rule_id", s.rule_id}, {"legible", s.legible}, {"confidence", s.confidence}});
  }
  return json{{"entrances", entrances},
              {"sign_readings", readings},
              {"passes_used", report.passes_used}};
}

std::optional<AnalyzerReport> parse_analyzer_report(const json& j) {
  if (!j.is_object()) return std::nullopt;
  const auto entrances = j.find("entrances");
  const auto readings = j.find("sign_readings");
  const auto passes = j.find("passes_used");
  if (entrances == j.end() || readings == j.end() || passes == j.end()) return std::nullopt;
  if (!entrances->is_array() || !readings->is_array() || !passes->is_number_integer()) {
    return std::nullopt;
  }

  AnalyzerReport report;
  report.passes_used = passes->get<int>();
  if (report.passes_used < 0) return std::nullopt;

  for (const auto& e : *entrances) {
    if (!e.is_object()) return std::nullopt;
    const auto id = e.find("id");
    const auto pos = e.find("position");
    const auto kind = e.find("kind");
    const auto conf = e.find("confidence");
    if (id == e.end() || pos == e.end() || kind == e.end() || conf == e.end()) {
      return std::nullopt;
    }
    if (!id->is_number_integer() || !pos->is_array() || pos->size() != 2 ||
        !(*pos)[0].is_number() || !(*pos)[1].is_number() || !kind->is_string() ||
        !conf->is_number()) {
      return std::nullopt;
    }
    Entrance out;
    out.id = id->get<int>();
    out.position = {(*pos)[0].get<double>(), (*pos)[1].get<double>()};
    if (!std::isfinite(out.position.x) || !std::isfinite(out.position.y)) return std::nullopt;
    try {
      out.kind = entrance_kind_from_string(kind->get<std::string>());
    } catch (const SceneParseError&) {
      return std::nullopt;
    }
    out.confidence = conf->get<double>();
    if (!(out.confidence > 0.0) || out.confidence > 1.0) return std::nullopt;
    out.source = EntranceSource::vlm;
    report.entrances.push_back(out);
  }

  for (const auto& s : *readings) {
    if (!s.is_object()) return std::nullopt;
    const auto rule = s.find("rule_id");
    const auto legible = s.find("legible");
    const auto conf = s.find("confidence");
    if (rule == s.end() || legible == s.end() || conf == s.end()) return std::nullopt;
    if (!rule->is_number_integer() || !legible->is_boolean() || !conf->is_number()) {
      return std::nullopt;
    }
    SignReading out{rule->get<int>(), legible->get<bool>(), conf->get<double>()};
    if (!(out.confidence > 0.0) || out.confidence > 1.0) return std::nullopt;
    report.sign_readings.push_back(out);
  }
  return report;
}

const char* to_string(Route r) {
  return r == Route::crowdsourced ? "crowdsourced" : "analyzer";
}

const char* to_string(DispatchReason r) {
  switch (r) {
    case DispatchReason::frequent: return "frequent";
    case DispatchReason::cold_start: return "cold_start";
    case DispatchReason::long_tail: return "long_tail";
    case DispatchReason::dynamic_change: return "dynamic_change";
  }
  return "frequent";
}

}  // namespace curbplan
