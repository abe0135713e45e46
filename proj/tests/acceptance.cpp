// Acceptance suite: runs every release criterion at its stated tolerance and
// prints one PASS/FAIL line per criterion. Exits non-zero if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "curbplan/bench.hpp"
#include "curbplan/econ.hpp"
#include "curbplan/random.hpp"
#include "curbplan/scene_gen.hpp"
#include "curbplan/simkit.hpp"
#include "curbplan/solver.hpp"
#include "oracle.hpp"
#include "testscenes.hpp"

using namespace curbplan;

namespace {

int failures = 0;
std::vector<std::string> notes;

void expect(bool ok, const std::string& what) {
  if (!ok) {
    ++failures;
    notes.push_back(what);
  }
}

struct Criterion {
  int id;
  std::string name;
  std::function<void()> body;
};

struct Pipeline {
  Scene scene;
  std::vector<ParkingCandidate> candidates;
  std::vector<Entrance> entrances;
};

Pipeline preset_pipeline(uint64_t seed, ScenePreset preset) {
  Pipeline p{generate_scene(seed, preset), {}, {}};
  const auto decision = dispatch(p.scene.merchant);
  std::optional<AnalyzerReport> report;
  if (decision.route == Route::analyzer) {
    report = mock_analyze(p.scene, {2.0, 0.05, 0.05}, mix_seed(seed, 99));
  }
  p.candidates =
      generate_candidates(p.scene, {}, report ? &report->sign_readings : nullptr);
  p.entrances = infer_entrances(p.scene, decision, report ? &*report : nullptr);
  return p;
}

Pipeline random_pipeline(uint64_t seed) {
  Pipeline p{testscenes::make_random_scene(seed), {}, {}};
  const auto decision = dispatch(p.scene.merchant);
  std::optional<AnalyzerReport> report;
  if (decision.route == Route::analyzer) {
    report = mock_analyze(p.scene, {1.0, 0.05, 0.1}, mix_seed(seed, 7));
  }
  p.candidates =
      generate_candidates(p.scene, {}, report ? &report->sign_readings : nullptr);
  p.entrances = infer_entrances(p.scene, decision, report ? &*report : nullptr);
  return p;
}

// 1. red-light pass budget
void criterion_pass_budget() {
  expect(sim::passes_in_window(30.0, 8.0) == 3, "passes_in_window(30, 8) != 3");
  expect(sim::passes_in_window(60.0, 8.0) == 7, "passes_in_window(60, 8) != 7");
}

// 2. platform compute table
void criterion_platform_table() {
  const double printed[4][2] = {{45, 85}, {90, 300}, {75, 150}, {600, 1200}};
  const sim::Verdict verdicts[4] = {sim::Verdict::marginal, sim::Verdict::yes,
                                    sim::Verdict::yes, sim::Verdict::easily};
  const auto& platforms = sim::builtin_platforms();
  expect(platforms.size() == 4, "expected four built-in platforms");
  for (size_t i = 0; i < platforms.size() && i < 4; ++i) {
    const auto f = sim::feasibility_check(platforms[i]);
    expect(std::abs(f.idle_lo_tops - printed[i][0]) <= 5.0,
           platforms[i].name + " idle low off by more than 5 TOPS");
    expect(std::abs(f.idle_hi_tops - printed[i][1]) <= 5.0,
           platforms[i].name + " idle high off by more than 5 TOPS");
    expect(f.verdict == verdicts[i], platforms[i].name + " verdict class wrong");
  }
}

// 3. economics
void criterion_economics() {
  expect(econ::per_driver_daily({20.0, 2.5, 30.0, 250.0, 1.0}) == 25.0,
         "per_driver_daily(20, 2.5, 30) != 25.00 exactly");
  expect(econ::per_driver_annual({20.0, 2.5, 30.0, 250.0, 1.0}) == 6250.0,
         "per_driver_annual != 6250 exactly");
  expect(std::round(6250.0 / 1000.0) * 1000.0 == 6000.0,
         "rounded annual figure != 6000");
  expect(econ::imagery_cost(40.0) == 0.28, "imagery_cost(40) != 0.28");
  expect(econ::imagery_cost(80.0) == 0.56, "imagery_cost(80) != 0.56");
}

// 4. oracle equivalence on 300 seeded scenes
void criterion_oracle() {
  for (const auto preset :
       {ScenePreset::standalone, ScenePreset::row_shops, ScenePreset::strip_mall}) {
    for (uint64_t seed = 1; seed <= 100; ++seed) {
      const auto p = preset_pipeline(seed, preset);
      const auto fast = solve(p.scene, p.candidates, p.entrances, {});
      const auto brute = oracle::oracle_solve(p.scene, p.candidates, p.entrances, {});
      const std::string tag =
          std::string(to_string(preset)) + " seed " + std::to_string(seed);
      expect(fast.mode == brute.mode, "mode mismatch on " + tag);
      expect(fast.entries.size() == brute.entries.size(), "entry count mismatch on " + tag);
      if (!fast.entries.empty() && !brute.entries.empty()) {
        expect(fast.entries[0].candidate.id == brute.entries[0].candidate.id,
               "top-1 candidate mismatch on " + tag);
        expect(std::abs(fast.entries[0].cost.total - brute.entries[0].cost.total) <= 1e-9,
               "top-1 total differs beyond 1e-9 on " + tag);
      }
    }
  }
}

// 5. constraint soundness on 1000 randomized scenes
void criterion_soundness() {
  SolveConfig cfg;
  cfg.top_k = 0;
  int hard = 0, soft = 0, infeasible = 0;
  for (uint64_t seed = 1; seed <= 1000; ++seed) {
    const auto p = random_pipeline(seed);
    const auto rec = solve(p.scene, p.candidates, p.entrances, cfg);
    bool any_hard = false;
    for (const auto& c : p.candidates) {
      if (c.legality.kind != LegalityKind::illegal) any_hard = true;
    }
    const std::string tag = "seed " + std::to_string(seed);
    switch (rec.mode) {
      case SolveMode::hard: {
        ++hard;
        expect(any_hard, "hard mode with empty legal set on " + tag);
        for (const auto& e : rec.entries) {
          expect(e.candidate.legality.kind != LegalityKind::illegal,
                 "illegal candidate in hard mode on " + tag);
        }
        break;
      }
      case SolveMode::soft: {
        ++soft;
        expect(!any_hard, "soft mode despite a legal candidate on " + tag);
        expect(rec.soft_alert, "soft mode without alert on " + tag);
        for (const auto& e : rec.entries) {
          expect(e.candidate.risk < 0.1, "soft entry at/above tau on " + tag);
        }
        break;
      }
      case SolveMode::infeasible: {
        ++infeasible;
        expect(!any_hard, "infeasible despite a legal candidate on " + tag);
        expect(rec.entries.empty(), "infeasible with entries on " + tag);
        break;
      }
    }
  }
  expect(hard > 0 && soft > 0 && infeasible > 0,
         "scene population failed to exercise all three modes (" + std::to_string(hard) +
             "/" + std::to_string(soft) + "/" + std::to_string(infeasible) + ")");
}

// 6. walk fallback exactness + small-graph shortest paths
void criterion_walk() {
  Rng rng(606);
  const geo::PedestrianGraph empty;
  for (int i = 0; i < 2000; ++i) {
    const geo::Point p{rng.uniform(-500.0, 500.0), rng.uniform(-500.0, 500.0)};
    const geo::Point e{rng.uniform(-500.0, 500.0), rng.uniform(-500.0, 500.0)};
    const auto w = geo::walk_distance(p, e, empty);
    expect(w.method == geo::WalkMethod::euclidean_fallback, "empty graph not falling back");
    expect(w.distance == 1.4 * geo::euclidean_distance(p, e),
           "fallback not exactly 1.4x the straight-line distance");
  }
  for (int iter = 0; iter < 500; ++iter) {
    geo::PedestrianGraph g;
    const int n = rng.uniform_int(2, 8);
    std::vector<geo::Point> pos(n);
    for (int i = 0; i < n; ++i) {
      pos[i] = {rng.uniform(-80.0, 80.0), rng.uniform(-80.0, 80.0)};
      g.nodes[i + 1] = pos[i];
    }
    for (int i = 1; i < n; ++i) {
      if (rng.bernoulli(0.85)) {
        const int parent = rng.uniform_int(0, i - 1);
        g.edges.push_back({i + 1, parent + 1,
                           geo::euclidean_distance(pos[i], pos[parent]) *
                               rng.uniform(1.0, 1.4)});
      }
    }
    const int a = rng.uniform_int(1, n);
    const int b = rng.uniform_int(1, n);
    const auto fast = geo::shortest_path(g, std::min(a, b), std::max(a, b));
    const auto brute = oracle::enumerate_shortest_path(g, std::min(a, b), std::max(a, b));
    expect(fast.has_value() == brute.has_value(), "reachability mismatch");
    if (fast && brute) {
      expect(*fast == *brute, "shortest path differs from exhaustive enumeration");
    }
  }
}

// 7. wage-scaling ranking invariance
void criterion_wage_scaling() {
  Rng rng(707);
  Scene scene;
  scene.origin_lat = 34.42;
  scene.origin_lon = -119.70;
  scene.destination = {0, 0};
  scene.curb_segments.push_back(
      {1, geo::Polyline{{{-150, -15}, {150, -15}}}, Maneuver::pull_over, {}});
  const std::vector<Entrance> entrances = {
      {1, {5, 10}, EntranceKind::front, 1.0, EntranceSource::structured}};
  std::vector<ParkingCandidate> cands;
  for (int i = 0; i < 60; ++i) {
    ParkingCandidate c;
    c.id = i;
    c.position = {rng.uniform(-150.0, 150.0), rng.uniform(-60.0, 60.0)};
    c.segment_id = 1;
    c.maneuver = Maneuver::pull_over;
    c.park_time_s = std::array{15.0, 30.0, 60.0}[rng.uniform_int(0, 2)];
    c.legality = {LegalityKind::legal, 0};
    c.risk = 0.0;
    c.fine = 0.0;
    cands.push_back(c);
  }
  SolveConfig base;
  base.top_k = 0;
  const auto ref = solve(scene, cands, entrances, base);

  for (const double factor : {0.5, 2.0, 10.0}) {
    SolveConfig scaled = base;
    scaled.wage = base.wage * factor;
    const auto rec = solve(scene, cands, entrances, scaled);
    expect(rec.entries.size() == ref.entries.size(), "entry count changed under scaling");
    for (size_t i = 0; i < rec.entries.size() && i < ref.entries.size(); ++i) {
      expect(rec.entries[i].candidate.id == ref.entries[i].candidate.id,
             "ordering changed at wage factor " + std::to_string(factor));
      const double expected = ref.entries[i].cost.total * factor;
      const double got = rec.entries[i].cost.total;
      if (factor == 0.5 || factor == 2.0) {
        expect(got == expected, "power-of-two scaling not exact");
      } else {
        expect(std::abs(got - expected) <= 1e-12 * std::max(1.0, std::abs(expected)),
               "x10 scaling beyond 1e-12 relative");
      }
    }
  }
}

// 8. scheduler invariants across 1000 seeded timelines
void criterion_scheduler() {
  for (uint64_t seed = 1; seed <= 1000; ++seed) {
    Rng rng(mix_seed(seed, 0xace));
    const auto& platforms = sim::builtin_platforms();
    const auto spec = platforms[rng.uniform_int(0, static_cast<int>(platforms.size()) - 1)];
    const auto timeline = sim::generate_timeline(seed, rng.uniform_int(1, 8),
                                                 sim::default_mix());
    const int required = rng.uniform_int(1, 6);
    const auto r = sim::schedule_passes(timeline, spec, required, 60.0, seed);

    expect(r.completed == static_cast<int>(r.log.size()), "log size != completed");
    for (const auto& log : r.log) {
      const auto& w = timeline.windows[log.window_index];
      expect(log.start >= w.start - 1e-9 && log.end <= w.start + w.duration + 1e-9,
             "pass crosses a window boundary");
      expect(w.idle_fraction * spec.tops_lo >= 60.0, "pass in an ineligible window");
    }
  }
  Rng rng(808);
  for (int iter = 0; iter < 1000; ++iter) {
    auto spec = sim::builtin_platforms()[1];  // HW4
    spec.pass_lo = spec.pass_hi = rng.uniform(3.0, 12.0);
    sim::DriveTimeline t;
    const double duration = rng.uniform(5.0, 120.0);
    t.windows.push_back({sim::ScenarioKind::deep_queue, 0.0, duration, 0.5});
    t.arrival = duration + 30.0;
    const int required = rng.uniform_int(1, 12);
    const auto r = sim::schedule_passes(t, spec, required, 60.0, 3);
    const int budget = sim::passes_in_window(duration, spec.pass_lo);
    expect(r.completed == std::min(required, budget),
           "single-window completion != floor(duration / pass_time)");
  }
}

// 9. pre-cache budget
void criterion_precache() {
  const auto t = sim::simulate_precache(sim::AssetManifest::defaults(), 4.0, false);
  expect(t.size() == 3, "default manifest should have three tiers");
  if (t.size() == 3) {
    expect(t[0] == 4.0, "tier 1 at 4 Mbps should complete at exactly 4.0 s");
    expect(t[0] <= 5.0, "tier 1 exceeds the 5 s budget");
    expect(t[0] < t[1] && t[1] < t[2], "tier completion times not strictly increasing");
  }
}

// 10. dispatch threshold and trigger rate
void criterion_dispatch() {
  MerchantRecord nine;
  nine.visit_count = 9;
  nine.heatmap = {{{0, 0}, 1.0}};
  expect(dispatch(nine).route == Route::analyzer, "9 visits should route to the analyzer");
  MerchantRecord ten = nine;
  ten.visit_count = 10;
  expect(dispatch(ten).route == Route::crowdsourced,
         "10 visits should route to crowdsourced");

  // synthetic population: 65% of deliveries to 10+ visit merchants with
  // heatmaps, 3% change flags, remainder cold-start/long-tail
  Rng rng(2024);
  const int n = 50000;
  int analyzer = 0;
  for (int i = 0; i < n; ++i) {
    MerchantRecord m;
    if (rng.bernoulli(0.65)) {
      m.visit_count = rng.uniform_int(10, 60);
      m.heatmap = {{{0, 0}, 1.0}};
    } else {
      m.visit_count = rng.bernoulli(0.3) ? 0 : rng.uniform_int(1, 9);
      if (rng.bernoulli(0.2)) m.heatmap = {{{0, 0}, 1.0}};
    }
    m.dynamic_change_flag = rng.bernoulli(0.03);
    if (dispatch(m).route == Route::analyzer) ++analyzer;
  }
  const double rate = static_cast<double>(analyzer) / n;
  expect(rate >= 0.30 && rate <= 0.40,
         "analyzer trigger rate " + std::to_string(rate) + " outside [0.30, 0.40]");
}

// 11. policy benchmark dominance on 100 row_shops scenes
void criterion_benchmark() {
  std::vector<Scene> scenes;
  for (uint64_t seed = 1; seed <= 100; ++seed) {
    scenes.push_back(generate_scene(seed, ScenePreset::row_shops));
  }
  BenchConfig cfg;
  cfg.noise = {2.0, 0.05, 0.05};
  cfg.seed = 42;
  const auto result = run_bench(
      scenes, {PolicyId::dapp, PolicyId::legal_nearest, PolicyId::nearest_any}, cfg);
  const auto row = [&](const char* name) -> const PolicyAggregate* {
    for (const auto& r : result.rows) {
      if (r.policy == name) return &r;
    }
    return nullptr;
  };
  const auto* dapp = row("dapp");
  const auto* legal = row("legal_nearest");
  const auto* any = row("nearest_any");
  expect(dapp && legal && any, "missing policy rows");
  if (dapp && legal && any) {
    expect(dapp->fine_exposure_usd <= any->fine_exposure_usd,
           "dapp fine exposure exceeds nearest_any");
    expect(legal->mean_walk_m <= dapp->mean_walk_m,
           "legal_nearest mean walk exceeds dapp mean walk");
  }
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "red-light pass budget: floor(30/8)=3, floor(60/8)=7", criterion_pass_budget},
      {2, "platform compute table within 5 TOPS and verdict classes", criterion_platform_table},
      {3, "economics: $25/day exact, $6250/yr (+$6000 rounded), imagery $0.28/$0.56",
       criterion_economics},
      {4, "solver matches the brute-force oracle on 300 seeded scenes", criterion_oracle},
      {5, "constraint soundness over 1000 randomized scenes", criterion_soundness},
      {6, "walk fallback exact 1.4x; small-graph paths match enumeration", criterion_walk},
      {7, "wage scaling preserves ordering and scales totals", criterion_wage_scaling},
      {8, "scheduler invariants over 1000 seeded timelines", criterion_scheduler},
      {9, "pre-cache tier 1 in 4.0 s <= 5 s, strictly increasing tiers", criterion_precache},
      {10, "dispatch threshold exact; trigger rate in [0.30, 0.40]", criterion_dispatch},
      {11, "benchmark dominance on 100 row_shops scenes", criterion_benchmark},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    failures = 0;
    notes.clear();
    const auto start = std::chrono::steady_clock::now();
    c.body();
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - start)
                        .count();
    if (failures == 0) {
      std::printf("PASS criterion %2d: %s (%lld ms)\n", c.id, c.name.c_str(),
                  static_cast<long long>(ms));
    } else {
      ++failed;
      std::printf("FAIL criterion %2d: %s (%d check(s) failed, %lld ms)\n", c.id,
                  c.name.c_str(), failures, static_cast<long long>(ms));
      const size_t show = notes.size() < 5 ? notes.size() : 5;
      for (size_t i = 0; i < show; ++i) {
        std::printf("      - %s\n", notes[i].c_str());
      }
      if (notes.size() > show) {
        std::printf("      ... and %zu more\n", notes.size() - show);
      }
    }
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
