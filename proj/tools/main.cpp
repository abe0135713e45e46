#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "curbplan/bench.hpp"
#include "curbplan/econ.hpp"
#include "curbplan/geojson.hpp"
#include "curbplan/random.hpp"
#include "curbplan/remote_analyzer.hpp"
#include "curbplan/scene_gen.hpp"
#include "curbplan/simkit.hpp"
#include "curbplan/solver.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace curbplan;

namespace {

constexpr int kExitUsage = 2;

void print_header(const CLI::App* sub, bool no_timestamp) {
  if (no_timestamp) return;
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%S", std::localtime(&now));
  fmt::print("# curbplan {} | {}\n", sub->get_name(), buf);
}

/// "tue:12:30" or a plain weekly minute.
int parse_weekly_time(const std::string& text) {
  static const std::map<std::string, int> days = {{"mon", 0}, {"tue", 1}, {"wed", 2},
                                                  {"thu", 3}, {"fri", 4}, {"sat", 5},
                                                  {"sun", 6}};
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    const int minute = std::stoi(text);
    if (minute < 0 || minute >= kMinutesPerWeek) {
      throw std::invalid_argument("weekly minute must be in [0, 10080)");
    }
    return minute;
  }
  const auto day_it = days.find(text.substr(0, colon));
  if (day_it == days.end()) throw std::invalid_argument("unknown day in time '" + text + "'");
  const auto rest = text.substr(colon + 1);
  const auto colon2 = rest.find(':');
  if (colon2 == std::string::npos) throw std::invalid_argument("expected day:HH:MM");
  const int hh = std::stoi(rest.substr(0, colon2));
  const int mm = std::stoi(rest.substr(colon2 + 1));
  if (hh < 0 || hh > 23 || mm < 0 || mm > 59) {
    throw std::invalid_argument("time of day out of range");
  }
  return day_it->second * kMinutesPerDay + hh * 60 + mm;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  json doc;
  in >> doc;
  return doc;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
}

struct SolveFlags {
  double wage = 20.0;
  double walk_speed = 1.2;
  double tau = 0.1;
  double dwell = 10.0;
  int top_k = 5;
  double interval = 5.0;
  double radius = 200.0;
  double snap_tolerance = 50.0;
};

void add_solve_flags(CLI::App* sub, SolveFlags& f) {
  sub->add_option("--wage", f.wage, "driver wage, USD/hour");
  sub->add_option("--walk-speed", f.walk_speed, "walking speed, m/s");
  sub->add_option("--tau", f.tau, "soft-mode risk ceiling");
  sub->add_option("--dwell", f.dwell, "expected stop duration, minutes");
  sub->add_option("--top-k", f.top_k, "ranked entries to keep");
  sub->add_option("--interval", f.interval, "curb sampling interval, m (5-10)");
  sub->add_option("--radius", f.radius, "candidate search radius, m");
  sub->add_option("--snap-tolerance", f.snap_tolerance, "sidewalk snap tolerance, m");
}

/// Overlays file values onto flags the user did not set explicitly.
void apply_config_file(const CLI::App* sub, const std::string& path, SolveFlags& f) {
  const json doc = load_json_file(path);
  const auto overlay = [&](const char* flag, const char* key, double& slot) {
    if (sub->count(flag) == 0 && doc.contains(key)) slot = doc.at(key).get<double>();
  };
  overlay("--wage", "wage", f.wage);
  overlay("--walk-speed", "walk_speed", f.walk_speed);
  overlay("--tau", "tau", f.tau);
  overlay("--dwell", "expected_dwell", f.dwell);
  overlay("--interval", "interval", f.interval);
  overlay("--radius", "radius", f.radius);
  overlay("--snap-tolerance", "snap_tolerance", f.snap_tolerance);
  if (sub->count("--top-k") == 0 && doc.contains("top_k")) {
    f.top_k = doc.at("top_k").get<int>();
  }
}

SolveConfig make_solve_config(const SolveFlags& f) {
  SolveConfig cfg;
  cfg.wage = f.wage;
  cfg.walk_speed = f.walk_speed;
  cfg.tau = f.tau;
  cfg.expected_dwell = f.dwell;
  cfg.top_k = f.top_k;
  cfg.walk.snap_tolerance = f.snap_tolerance;
  if (!(cfg.wage > 0.0) || !(cfg.walk_speed > 0.0) || !(cfg.tau > 0.0) || cfg.tau > 1.0) {
    throw std::invalid_argument("wage and walk speed must be positive, tau in (0, 1]");
  }
  return cfg;
}

CandidateConfig make_candidate_config(const SolveFlags& f) {
  CandidateConfig cfg;
  cfg.interval = f.interval;
  cfg.radius = f.radius;
  cfg.expected_dwell = f.dwell;
  return cfg;
}

std::vector<sim::PlatformSpec> resolve_platforms(const std::string& platform_file) {
  if (platform_file.empty()) return sim::builtin_platforms();
  return sim::platforms_from_json(load_json_file(platform_file));
}

// ---------------------------------------------------------------------------
// subcommands
// ---------------------------------------------------------------------------

int cmd_gen(uint64_t seed, const std::string& preset_name, int count,
            const std::string& out_dir, double jitter) {
  const auto preset = preset_from_string(preset_name);
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec || !fs::is_directory(out_dir)) {
    throw std::invalid_argument("output directory not writable: " + out_dir);
  }
  GenOptions opts;
  opts.destination_jitter = jitter;
  for (int i = 0; i < count; ++i) {
    const uint64_t s = seed + static_cast<uint64_t>(i);
    const Scene scene = generate_scene(s, preset, opts);
    const std::string name = fmt::format("scene_{}_{}.json", preset_name, s);
    const fs::path path = fs::path(out_dir) / name;
    write_file(path.string(), serialize_scene(scene));
    fmt::print("{}\n", path.string());
  }
  return 0;
}

struct AnalyzerFlags {
  std::string mode = "mock";
  double sigma = 0.0;
  double miss_rate = 0.0;
  double misread_rate = 0.0;
  std::string endpoint;
  std::string model;
  std::string api_key;
  std::vector<std::string> images;
};

std::optional<AnalyzerReport> run_analyzer(const Scene& scene, const AnalyzerFlags& flags,
                                           uint64_t seed) {
  if (flags.mode == "none") return std::nullopt;
  if (flags.mode == "mock") {
    return mock_analyze(scene, {flags.sigma, flags.miss_rate, flags.misread_rate}, seed);
  }
  if (flags.mode == "remote") {
    if (flags.endpoint.empty() || flags.model.empty()) {
      throw std::invalid_argument("--analyzer remote requires --endpoint and --model");
    }
    RemoteAnalyzerConfig cfg;
    cfg.endpoint = flags.endpoint;
    cfg.model = flags.model;
    cfg.api_key = flags.api_key;
    std::vector<std::string> urls;
    for (const auto& path : flags.images) {
      std::ifstream in(path, std::ios::binary);
      if (!in) throw std::runtime_error("cannot open image: " + path);
      std::string bytes((std::istreambuf_iterator<char>(in)),
                        std::istreambuf_iterator<char>());
      const bool png = path.size() >= 4 && path.substr(path.size() - 4) == ".png";
      urls.push_back(image_data_url(png ? "image/png" : "image/jpeg", bytes));
    }
    return remote_analyze(cfg, scene, urls);
  }
  throw std::invalid_argument("unknown analyzer mode '" + flags.mode + "'");
}

int cmd_solve(const std::string& scene_path, const std::string& time_override,
              const SolveFlags& flags, const AnalyzerFlags& analyzer_flags,
              const std::string& geojson_path, bool full, uint64_t seed) {
  Scene scene = load_scene_file(scene_path);
  if (!time_override.empty()) {
    scene.analysis_time = parse_weekly_time(time_override);
  }

  SolveConfig cfg = make_solve_config(flags);
  if (full) cfg.top_k = 0;  // keep everything

  auto decision = dispatch(scene.merchant);
  fmt::print("dispatch: {} ({}), merchant visits {}\n", to_string(decision.route),
             to_string(decision.reason), scene.merchant.visit_count);

  if (decision.route == Route::crowdsourced) {
    const auto picks = heatmap_recommend(scene.merchant, scene, scene.analysis_time, 3);
    for (const auto& p : picks) {
      fmt::print("heatmap pick: ({:.1f}, {:.1f}) weight {:.3f}\n", p.position.x,
                 p.position.y, p.weight);
    }
    if (picks.empty()) {
      // every heatmap cell sits on curb that is illegal right now
      fmt::print("heatmap unusable at this time; falling through to the analyzer\n");
      decision = {Route::analyzer, DispatchReason::dynamic_change};
    }
  }

  std::optional<AnalyzerReport> report;
  if (decision.route == Route::analyzer) {
    report = run_analyzer(scene, analyzer_flags, seed);
    if (report) {
      fmt::print("analyzer: {} entrance(s), {} sign reading(s), {} pass(es)\n",
                 report->entrances.size(), report->sign_readings.size(),
                 report->passes_used);
    } else if (analyzer_flags.mode != "none") {
      fmt::print("analyzer: unavailable\n");
    }
  }

  const auto* report_ptr = report ? &*report : nullptr;
  const auto* readings = report ? &report->sign_readings : nullptr;
  const auto entrances = infer_entrances(scene, decision, report_ptr);
  const auto candidates = generate_candidates(scene, make_candidate_config(flags), readings);
  const auto costs = evaluate_all(scene, candidates, entrances, cfg);
  const auto rec = solve(scene, candidates, entrances, cfg);

  fmt::print("entrances: {} | candidates: {} | mode: {}\n", entrances.size(),
             candidates.size(), to_string(rec.mode));
  if (rec.soft_alert) {
    fmt::print("ALERT: no legal spot available; showing risk-tolerant options only\n");
  }
  if (rec.mode == SolveMode::infeasible) {
    fmt::print("no viable parking candidate under current constraints\n");
  } else {
    fmt::print("{:>4} {:>5} {:>8} {:>9} {:>7} {:>19} {:>7} {:>7} {:>7} {:>8}\n", "rank",
               "cand", "segment", "walk_m", "risk", "legality", "c_walk", "c_park",
               "c_risk", "total");
    for (size_t i = 0; i < rec.entries.size(); ++i) {
      const auto& e = rec.entries[i];
      fmt::print("{:>4} {:>5} {:>8} {:>9.1f} {:>7.2f} {:>19} {:>7.2f} {:>7.2f} {:>7.2f} "
                 "{:>8.2f}\n",
                 i + 1, e.candidate.id, e.candidate.segment_id, e.cost.walk_m,
                 e.candidate.risk, to_string(e.candidate.legality.kind), e.cost.c_walk,
                 e.cost.c_park, e.cost.c_risk, e.cost.total);
    }
  }

  if (!geojson_path.empty()) {
    write_file(geojson_path,
               recommendation_geojson(scene, candidates, costs, entrances, rec).dump(2) +
                   "\n");
    fmt::print("geojson written to {}\n", geojson_path);
  }
  return 0;
}

int cmd_feasibility(double required_tops, const std::string& platform_file) {
  const auto platforms = resolve_platforms(platform_file);
  fmt::print("{:<8} {:>14} {:>19} {:>10}\n", "platform", "capacity TOPS", "idle TOPS range",
             "verdict");
  for (const auto& p : platforms) {
    const auto f = sim::feasibility_check(p, required_tops);
    const std::string capacity = p.tops_lo == p.tops_hi
                                     ? fmt::format("{:.0f}", p.tops_lo)
                                     : fmt::format("{:.0f}-{:.0f}", p.tops_lo, p.tops_hi);
    std::string verdict = to_string(f.verdict);
    if (f.verdict == sim::Verdict::marginal) verdict += " (smaller model only)";
    fmt::print("{:<8} {:>14} {:>9.1f}-{:<9.1f} {:>10}\n", p.name, capacity, f.idle_lo_tops,
               f.idle_hi_tops, verdict);
  }
  return 0;
}

int cmd_simulate(const std::string& platform_name, const std::string& platform_file,
                 int passes, double required_tops, int n_windows, const std::string& mix_text,
                 const std::string& timeline_file, const std::string& save_timeline,
                 double pass_time_override, int runs, double bandwidth, bool cache_hit,
                 uint64_t seed) {
  const auto platforms = resolve_platforms(platform_file);
  const auto* platform = sim::find_platform(platforms, platform_name);
  if (!platform) throw std::invalid_argument("unknown platform '" + platform_name + "'");
  sim::PlatformSpec spec = *platform;
  if (pass_time_override > 0.0) {
    spec.pass_lo = spec.pass_hi = pass_time_override;
  }

  auto mix = sim::default_mix();
  if (!mix_text.empty()) {
    mix.clear();
    std::stringstream ss(mix_text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) {
        throw std::invalid_argument("mix format: scenario=weight,scenario=weight,...");
      }
      mix[sim::scenario_from_string(item.substr(0, eq))] = std::stod(item.substr(eq + 1));
    }
  }

  const auto precache =
      sim::simulate_precache(sim::AssetManifest::defaults(), bandwidth, cache_hit);
  const auto manifest = sim::AssetManifest::defaults();
  fmt::print("pre-cache at {:.1f} Mbps{}:\n", bandwidth, cache_hit ? " (cache hit)" : "");
  for (size_t i = 0; i < precache.size(); ++i) {
    fmt::print("  tier {} ({:<20}) complete at {:>7.1f} s\n", i + 1,
               manifest.tiers[i].label, precache[i]);
  }

  const auto timeline_for_run = [&](int run) -> sim::DriveTimeline {
    if (!timeline_file.empty()) {
      return sim::timeline_from_json(load_json_file(timeline_file));
    }
    return sim::generate_timeline(mix_seed(seed, static_cast<uint64_t>(run)), n_windows, mix);
  };

  if (runs <= 1) {
    const auto timeline = timeline_for_run(0);
    if (!save_timeline.empty()) {
      write_file(save_timeline, sim::timeline_to_json(timeline).dump(2) + "\n");
    }
    const auto result = sim::schedule_passes(timeline, spec, passes, required_tops, seed);
    fmt::print("timeline: {} window(s), arrival at {:.1f} s\n", timeline.windows.size(),
               timeline.arrival);
    fmt::print("pass time drawn: {:.2f} s on {}\n", result.pass_time, spec.name);
    for (const auto& log : result.log) {
      const auto& w = timeline.windows[log.window_index];
      fmt::print("  pass {:>6.1f} - {:>6.1f} s in window {} ({}, idle {:.2f})\n", log.start,
                 log.end, log.window_index, to_string(w.scenario), w.idle_fraction);
    }
    fmt::print("completed {}/{} pass(es), {} preempted -> analysis {}\n", result.completed,
               passes, result.preempted, result.analysis_complete ? "COMPLETE" : "INCOMPLETE");
  } else {
    int complete = 0;
    for (int r = 0; r < runs; ++r) {
      const auto timeline = timeline_for_run(r);
      const auto result = sim::schedule_passes(timeline, spec, passes, required_tops,
                                               mix_seed(seed, 0x5157ULL + r));
      if (result.analysis_complete) ++complete;
    }
    fmt::print("{} of {} runs complete ({:.3f})\n", complete, runs,
               static_cast<double>(complete) / runs);
  }
  return 0;
}

int cmd_econ(double wage, double minutes, double deliveries, double days, double fleet,
             double images, double rate) {
  if (!(wage > 0.0) || !(minutes > 0.0) || !(deliveries > 0.0) || !(days > 0.0) ||
      !(fleet > 0.0) || images < 0.0 || !(rate > 0.0)) {
    throw std::invalid_argument("economics inputs must be positive");
  }
  econ::EconParams p{wage, minutes, deliveries, days, fleet};
  const double daily = econ::per_driver_daily(p);
  const double annual = econ::per_driver_annual(p);
  const double rounded = std::round(annual / 1000.0) * 1000.0;

  fmt::print("per-minute value:   ${:.4f} at ${:.2f}/h\n", econ::per_minute_value(wage), wage);
  fmt::print("per-driver daily:   ${:.2f} ({} min x {} deliveries)\n", daily, minutes,
             deliveries);
  fmt::print("per-driver annual:  ${:.2f} exact over {} days (~${:.0f} rounded)\n", annual,
             days, rounded);
  const double lo = econ::per_driver_annual(econ::conservative_params());
  const double hi = econ::per_driver_annual(econ::optimistic_params());
  fmt::print("preset bracket:     ${:.0f} conservative .. ${:.0f} optimistic\n", lo, hi);
  fmt::print("imagery cost:       ${:.2f} for {:.0f} images at ${:.2f}/1000\n",
             econ::imagery_cost(images, rate), images, rate);
  fmt::print("fleet minutes/day:  {:.0f} across {:.0f} drivers\n", econ::fleet_minutes(p),
             fleet);
  fmt::print("walk value:         10 m closer saves {:.1f} s at 1.2 m/s\n",
             econ::walk_time_delta(10.0, 1.2));
  fmt::print("note: annual value assumes saved minutes convert into additional "
             "deliveries given sufficient order supply\n");
  return 0;
}

int cmd_bench(const std::string& scene_dir, const std::string& policies_text,
              const std::string& out_prefix, const SolveFlags& flags, uint64_t seed) {
  std::vector<fs::path> files;
  if (fs::is_directory(scene_dir)) {
    for (const auto& entry : fs::directory_iterator(scene_dir)) {
      if (entry.path().extension() == ".json") files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) {
    throw std::invalid_argument("no scene files in '" + scene_dir + "'");
  }

  std::vector<Scene> scenes;
  scenes.reserve(files.size());
  for (const auto& f : files) scenes.push_back(load_scene_file(f.string()));

  std::vector<PolicyId> policies;
  std::stringstream ss(policies_text);
  std::string item;
  while (std::getline(ss, item, ',')) policies.push_back(policy_from_string(item));
  if (policies.empty()) throw std::invalid_argument("no policies requested");

  BenchConfig cfg;
  cfg.solve = make_solve_config(flags);
  cfg.candidates = make_candidate_config(flags);
  cfg.noise = {2.0, 0.05, 0.05};
  cfg.seed = seed;
  const auto result = run_bench(scenes, policies, cfg);

  fmt::print("{}", bench_to_markdown(result));
  if (!out_prefix.empty()) {
    write_file(out_prefix + ".csv", bench_to_csv(result));
    write_file(out_prefix + ".md", bench_to_markdown(result));
    fmt::print("reports written to {}.csv and {}.md\n", out_prefix, out_prefix);
  }

  const auto row = [&](PolicyId id) -> const PolicyAggregate* {
    for (const auto& r : result.rows) {
      if (r.policy == to_string(id)) return &r;
    }
    return nullptr;
  };
  const auto* dapp_row = row(PolicyId::dapp);
  const auto* any_row = row(PolicyId::nearest_any);
  if (dapp_row && any_row &&
      dapp_row->fine_exposure_usd > any_row->fine_exposure_usd + 1e-9) {
    fmt::print(stderr, "ASSERTION FAILED: dapp fine exposure exceeds nearest_any\n");
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"curbside parking decision engine and drive-compute simulation kit"};
  app.require_subcommand(1);
  bool no_timestamp = false;

  // gen
  auto* gen = app.add_subcommand("gen", "generate synthetic scene files");
  uint64_t gen_seed = 1;
  std::string gen_preset = "standalone";
  int gen_count = 1;
  std::string gen_out = ".";
  double gen_jitter = 0.0;
  gen->add_option("--seed", gen_seed, "first scene seed");
  gen->add_option("--preset", gen_preset, "standalone | row_shops | strip_mall");
  gen->add_option("--count", gen_count, "number of scenes")->check(CLI::PositiveNumber);
  gen->add_option("--out", gen_out, "output directory");
  gen->add_option("--jitter", gen_jitter, "destination jitter radius, m (max 50)");
  gen->add_flag("--no-timestamp", no_timestamp, "omit the timestamp header");

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "rank parking spots for a scene");
  std::string solve_scene;
  std::string solve_time;
  std::string solve_geojson;
  std::string solve_config_file;
  bool solve_full = false;
  uint64_t solve_seed = 0;
  SolveFlags solve_flags;
  AnalyzerFlags analyzer_flags;
  solve_cmd->add_option("scene", solve_scene, "scene file")->required();
  solve_cmd->add_option("--time", solve_time, "analysis time override (minute or day:HH:MM)");
  solve_cmd->add_option("--geojson", solve_geojson, "write a GeoJSON FeatureCollection");
  solve_cmd->add_flag("--full", solve_full, "print the full ranking");
  solve_cmd->add_option("--seed", solve_seed, "analyzer noise seed");
  solve_cmd->add_option("--config", solve_config_file, "JSON config file");
  add_solve_flags(solve_cmd, solve_flags);
  solve_cmd->add_option("--analyzer", analyzer_flags.mode, "mock | remote | none");
  solve_cmd->add_option("--sigma", analyzer_flags.sigma, "mock position noise, m");
  solve_cmd->add_option("--miss-rate", analyzer_flags.miss_rate, "mock entrance miss rate");
  solve_cmd->add_option("--misread-rate", analyzer_flags.misread_rate, "mock sign misread rate");
  solve_cmd->add_option("--endpoint", analyzer_flags.endpoint, "remote analyzer URL");
  solve_cmd->add_option("--model", analyzer_flags.model, "remote analyzer model name");
  solve_cmd->add_option("--api-key", analyzer_flags.api_key, "remote analyzer bearer token");
  solve_cmd->add_option("--image", analyzer_flags.images, "image file for the remote analyzer");
  solve_cmd->add_flag("--no-timestamp", no_timestamp, "omit the timestamp header");

  // feasibility
  auto* feas = app.add_subcommand("feasibility", "platform compute budget table");
  double feas_required = 60.0;
  std::string feas_platform_file;
  feas->add_option("--required-tops", feas_required, "model compute requirement");
  feas->add_option("--platform-file", feas_platform_file, "JSON platform table");
  feas->add_flag("--no-timestamp", no_timestamp, "omit the timestamp header");

  // simulate
  auto* simc = app.add_subcommand("simulate", "drive timeline + pass scheduling");
  std::string sim_platform = "HW4";
  std::string sim_platform_file;
  int sim_passes = 2;
  double sim_required = 60.0;
  int sim_windows = 6;
  std::string sim_mix;
  std::string sim_timeline;
  std::string sim_save_timeline;
  double sim_pass_time = 0.0;
  int sim_runs = 1;
  double sim_bandwidth = 4.0;
  bool sim_cache_hit = false;
  uint64_t sim_seed = 0;
  simc->add_option("--platform", sim_platform, "platform name");
  simc->add_option("--platform-file", sim_platform_file, "JSON platform table");
  simc->add_option("--passes", sim_passes, "required analysis passes")
      ->check(CLI::PositiveNumber);
  simc->add_option("--required-tops", sim_required, "per-pass compute requirement");
  simc->add_option("--windows", sim_windows, "windows per generated timeline");
  simc->add_option("--mix", sim_mix, "scenario mix, e.g. deep_queue=0.5,congestion=0.5");
  simc->add_option("--timeline", sim_timeline, "load a timeline file instead of generating");
  simc->add_option("--save-timeline", sim_save_timeline, "write the generated timeline");
  simc->add_option("--pass-time", sim_pass_time, "fix the per-pass time, s");
  simc->add_option("--runs", sim_runs, "number of seeded runs")->check(CLI::PositiveNumber);
  simc->add_option("--bandwidth", sim_bandwidth, "pre-cache bandwidth, Mbps");
  simc->add_flag("--cache-hit", sim_cache_hit, "assets already cached");
  simc->add_option("--seed", sim_seed, "run seed");
  simc->add_flag("--no-timestamp", no_timestamp, "omit the timestamp header");

  // econ
  auto* econ_cmd = app.add_subcommand("econ", "income and cost arithmetic");
  double econ_wage = 20.0, econ_minutes = 2.5, econ_deliveries = 30.0, econ_days = 250.0;
  double econ_fleet = 2000000.0, econ_images = 60.0, econ_rate = 7.0;
  econ_cmd->add_option("--wage", econ_wage, "USD/hour");
  econ_cmd->add_option("--minutes", econ_minutes, "minutes saved per delivery");
  econ_cmd->add_option("--deliveries", econ_deliveries, "deliveries per day");
  econ_cmd->add_option("--days", econ_days, "working days per year");
  econ_cmd->add_option("--fleet", econ_fleet, "fleet size, drivers");
  econ_cmd->add_option("--images", econ_images, "images per destination");
  econ_cmd->add_option("--rate", econ_rate, "USD per 1000 image requests");
  econ_cmd->add_flag("--no-timestamp", no_timestamp, "omit the timestamp header");

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "compare parking policies over scenes");
  std::string bench_dir;
  std::string bench_policies = "dapp,legal_nearest,nearest_any";
  std::string bench_out;
  std::string bench_config_file;
  uint64_t bench_seed = 0;
  SolveFlags bench_flags;
  bench_cmd->add_option("--scenes", bench_dir, "directory of scene files")->required();
  bench_cmd->add_option("--policies", bench_policies, "comma-separated policy list");
  bench_cmd->add_option("--out", bench_out, "report path prefix (.csv/.md)");
  bench_cmd->add_option("--seed", bench_seed, "analyzer noise seed");
  bench_cmd->add_option("--config", bench_config_file, "JSON config file");
  add_solve_flags(bench_cmd, bench_flags);
  bench_cmd->add_flag("--no-timestamp", no_timestamp, "omit the timestamp header");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kExitUsage;
  }

  try {
    if (gen->parsed()) {
      print_header(gen, no_timestamp);
      return cmd_gen(gen_seed, gen_preset, gen_count, gen_out, gen_jitter);
    }
    if (solve_cmd->parsed()) {
      print_header(solve_cmd, no_timestamp);
      if (!solve_config_file.empty()) {
        apply_config_file(solve_cmd, solve_config_file, solve_flags);
      }
      return cmd_solve(solve_scene, solve_time, solve_flags, analyzer_flags, solve_geojson,
                       solve_full, solve_seed);
    }
    if (feas->parsed()) {
      print_header(feas, no_timestamp);
      return cmd_feasibility(feas_required, feas_platform_file);
    }
    if (simc->parsed()) {
      print_header(simc, no_timestamp);
      return cmd_simulate(sim_platform, sim_platform_file, sim_passes, sim_required,
                          sim_windows, sim_mix, sim_timeline, sim_save_timeline,
                          sim_pass_time, sim_runs, sim_bandwidth, sim_cache_hit, sim_seed);
    }
    if (econ_cmd->parsed()) {
      print_header(econ_cmd, no_timestamp);
      return cmd_econ(econ_wage, econ_minutes, econ_deliveries, econ_days, econ_fleet,
                      econ_images, econ_rate);
    }
    if (bench_cmd->parsed()) {
      print_header(bench_cmd, no_timestamp);
      if (!bench_config_file.empty()) {
        apply_config_file(bench_cmd, bench_config_file, bench_flags);
      }
      return cmd_bench(bench_dir, bench_policies, bench_out, bench_flags, bench_seed);
    }
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kExitUsage;
  }
  return 0;
}
