#pragma once

#include <vector>

#include "curbplan/scene.hpp"

namespace curbplan {

/// A sampled curb position under consideration for parking.
struct ParkingCandidate {
  int id = 0;
  geo::Point position;
  int segment_id = 0;
  double offset = 0.0;  // arc length along the segment, meters
  Maneuver maneuver = Maneuver::parallel;
  double park_time_s = 0.0;  // 15 / 30 / 60 by maneuver
  Legality legality;
  double risk = 0.0;  // [0, 1]
  double fine = 0.0;  // USD
};

/// Maneuver time: 15 s pull-over, 60 s parallel, 30 s lot stall.
double park_time_for(Maneuver m);

struct CandidateConfig {
  double interval = 5.0;          // sampling spacing, must be in [5, 10]
  double radius = 200.0;          // straight-line search radius around D
  double expected_dwell = 10.0;   // minutes, for time-limit risk
};

/// Arc-length samples at 0, interval, 2*interval, ... plus the final
/// endpoint when it does not coincide with the last grid sample.
/// Throws std::invalid_argument when interval is outside [5, 10].
std::vector<geo::Point> sample_polyline(const geo::Polyline& line, double interval);

/// The candidate set: every segment sampled at the configured interval,
/// filtered to the search radius, with whole-day-illegal segments dropped
/// and each survivor annotated with legality, risk and fine at the scene's
/// analysis time. Deterministic ordering by (segment_id, offset).
std::vector<ParkingCandidate> generate_candidates(
    const Scene& scene, const CandidateConfig& cfg = {},
    const std::vector<SignReading>* readings = nullptr);

}  // namespace curbplan
