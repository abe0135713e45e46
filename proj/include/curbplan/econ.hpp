#pragma once

#include <utility>
#include <vector>

namespace curbplan::econ {

struct EconParams {
  double wage = 20.0;            // USD/hour
  double minutes_saved = 2.5;    // per delivery
  double deliveries = 30.0;      // per day
  double working_days = 250.0;   // per year
  double fleet_size = 2000000.0; // drivers
};

/// Exact $3,000/year and $8,000/year bracket endpoints.
EconParams conservative_params();
EconParams optimistic_params();

double per_minute_value(double wage);

/// minutes_saved x deliveries x wage/60.
double per_driver_daily(const EconParams& p);

double per_driver_annual(const EconParams& p);

double walk_time_delta(double distance_delta_m, double walk_speed_mps);

/// images x rate / 1000.
double imagery_cost(double images, double rate_per_thousand = 7.0);

/// fleet_size x minutes_saved x deliveries, per day.
double fleet_minutes(const EconParams& p);

/// Expected fines over a run of parking choices: sum of risk x fine,
/// accumulated in choice order (bit-identical to summing c_risk).
double fine_exposure(const std::vector<std::pair<double, double>>& risk_fine_pairs);

}  // namespace curbplan::econ
