#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace curbplan {

inline constexpr int kMinutesPerDay = 1440;
inline constexpr int kMinutesPerWeek = 10080;

enum class LegalityKind { legal, time_limited, illegal };

const char* to_string(LegalityKind k);

/// Parking legality at some instant; limit_minutes is meaningful only for
/// time_limited.
struct Legality {
  LegalityKind kind = LegalityKind::legal;
  int limit_minutes = 0;

  bool operator==(const Legality&) const = default;
};

/// Weekly recurrence window: applies on each listed day (0 = Monday) between
/// start_minute (inclusive) and end_minute (exclusive), 0 <= start < end <= 1440.
struct RuleWindow {
  std::set<int> days;
  int start_minute = 0;
  int end_minute = 0;
};

enum class RuleSource { structured, historical, vlm };

const char* to_string(RuleSource s);

struct LegalityRule {
  int id = 0;
  int segment_id = 0;
  std::vector<RuleWindow> schedule;
  Legality status;
  double fine = 0.0;
  std::optional<double> enforcement_rate;
  RuleSource source = RuleSource::structured;
  bool sign_ambiguous = false;  // vlm source only
  int priority = 0;
};

/// One decoded sign observation from an imagery analysis pass. confidence is
/// the analyzer's confidence that the sign permits parking; legible=false
/// means the sign could not be deciphered at all.
struct SignReading {
  int rule_id = 0;
  bool legible = true;
  double confidence = 1.0;
};

/// True when any schedule window of the rule covers the weekly minute t.
bool rule_covers(const LegalityRule& rule, int weekly_minute);

/// Legality of a segment at weekly minute t: among covering rules the
/// highest-priority one wins, ties broken toward the more restrictive
/// status. No covering rule means legal (scene files enumerate
/// restrictions, not permissions).
Legality legality_at(const std::vector<LegalityRule>& rules, int segment_id,
                     int weekly_minute);

struct RiskAssessment {
  double risk = 0.0;  // [0, 1]
  double fine = 0.0;  // USD
};

/// Violation risk and fine for a segment at weekly minute t.
///
/// Sources are consulted in strict precedence structured > historical > vlm;
/// within a source class the governing rule is chosen like legality_at.
///   structured:  legal -> 0, illegal -> 1, time_limited -> 0 if the
///                expected dwell fits the limit, else the rule's
///                enforcement_rate (0.5 when absent)
///   historical:  enforcement_rate (0.5 when absent)
///   vlm:         ambiguous sign -> 1 - confidence of a legible "permits
///                parking" reading (0.5 with no usable reading); a clearly
///                read sign maps like structured
/// With no covering rule at all the prior is 0.5 with fine 0.
RiskAssessment risk_of(const std::vector<LegalityRule>& rules, int segment_id,
                       int weekly_minute, double expected_dwell_minutes,
                       const std::vector<SignReading>* readings = nullptr);

/// True when the segment is illegal for every minute of the day containing
/// weekly minute t (the pre-filter predicate for candidate generation).
bool illegal_entire_day(const std::vector<LegalityRule>& rules, int segment_id,
                        int weekly_minute);

}  // namespace curbplan
