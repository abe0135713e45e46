#include "curbplan/candidates.hpp"

#include <algorithm>
#include <stdexcept>

namespace curbplan {

double park_time_for(Maneuver m) {
  switch (m) {
    case Maneuver::pull_over: return 15.0;
    case Maneuver::lot_space: return 30.0;
    case Maneuver::parallel: return 60.0;
  }
  return 60.0;
}

std::vector<geo::Point> sample_polyline(const geo::Polyline& line, double interval) {
  if (!(interval >= 5.0 && interval <= 10.0)) {
    throw std::invalid_argument("sampling interval must be in [5, 10] m");
  }
  const double total = line.length();
  std::vector<geo::Point> out;
  double s = 0.0;
  double last = 0.0;
  while (s <= total + 1e-9) {
    out.push_back(geo::point_at_arc_length(line, std::min(s, total)));
    last = std::min(s, total);
    s += interval;
  }
  if (total - last > 1e-6) {
    out.push_back(geo::point_at_arc_length(line, total));
  }
  return out;
}

std::vector<ParkingCandidate> generate_candidates(const Scene& scene,
                                                  const CandidateConfig& cfg,
                                                  const std::vector<SignReading>* readings) {
  std::vector<const CurbSegment*> segments;
  for (const auto& s : scene.curb_segments) segments.push_back(&s);
  std::sort(segments.begin(), segments.end(),
            [](const CurbSegment* a, const CurbSegment* b) { return a->id < b->id; });

  std::vector<ParkingCandidate> out;
  int next_id = 0;
  for (const auto* seg : segments) {
    // structured pre-filter: skip stretches that are illegal for the
    // whole analysis day
    if (illegal_entire_day(scene.rules, seg->id, scene.analysis_time)) continue;

    const Legality legality = legality_at(scene.rules, seg->id, scene.analysis_time);
    const RiskAssessment risk = risk_of(scene.rules, seg->id, scene.analysis_time,
                                        cfg.expected_dwell, readings);

    double offset = 0.0;
    const double total = seg->geometry.length();
    for (const auto& p : sample_polyline(seg->geometry, cfg.interval)) {
      if (geo::euclidean_distance(p, scene.destination) <= cfg.radius) {
        ParkingCandidate c;
        c.id = next_id;
        c.position = p;
        c.segment_id = seg->id;
        c.offset = std::min(offset, total);
        c.maneuver = seg->maneuver;
        c.park_time_s = park_time_for(seg->maneuver);
        c.legality = legality;
        c.risk = risk.risk;
        c.fine = risk.fine;
        out.push_back(c);
        ++next_id;
      }
      offset += cfg.interval;
    }
  }
  return out;
}

}  // namespace curbplan
