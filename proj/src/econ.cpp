#include "curbplan/econ.hpp"

#include <stdexcept>

namespace curbplan::econ {

EconParams conservative_params() {
  EconParams p;
  p.wage = 15.0;
  p.minutes_saved = 2.0;
  p.deliveries = 24.0;
  p.working_days = 250.0;
  return p;  // 15/60 * 2 * 24 * 250 = 3000
}

EconParams optimistic_params() {
  EconParams p;
  p.wage = 20.0;
  p.minutes_saved = 3.0;
  p.deliveries = 32.0;
  p.working_days = 250.0;
  return p;  // 20/60 * 3 * 32 * 250 = 8000
}

double per_minute_value(double wage) {
  if (!(wage > 0.0)) throw std::invalid_argument("wage must be positive");
  return wage / 60.0;
}

double per_driver_daily(const EconParams& p) {
  if (!(p.wage > 0.0) || p.minutes_saved < 0.0 || p.deliveries < 0.0) {
    throw std::invalid_argument("invalid economics parameters");
  }
  // divide last: keeps round-number inputs (2.5 min x 30 x $20 = $25) exact
  return p.minutes_saved * p.deliveries * p.wage / 60.0;
}

double per_driver_annual(const EconParams& p) {
  if (p.working_days < 0.0) throw std::invalid_argument("working_days must be non-negative");
  return per_driver_daily(p) * p.working_days;
}

double walk_time_delta(double distance_delta_m, double walk_speed_mps) {
  if (!(walk_speed_mps > 0.0)) throw std::invalid_argument("walk speed must be positive");
  return distance_delta_m / walk_speed_mps;
}

double imagery_cost(double images, double rate_per_thousand) {
  if (images < 0.0) throw std::invalid_argument("image count must be non-negative");
  return images * rate_per_thousand / 1000.0;
}

double fleet_minutes(const EconParams& p) {
  if (p.fleet_size < 0.0) throw std::invalid_argument("fleet size must be non-negative");
  return p.fleet_size * p.minutes_saved * p.deliveries;
}

double fine_exposure(const std::vector<std::pair<double, double>>& risk_fine_pairs) {
  double total = 0.0;
  for (const auto& [risk, fine] : risk_fine_pairs) {
    total += risk * fine;
  }
  return total;
}

}  // namespace curbplan::econ
