#include "curbplan/rules.hpp"

#include <algorithm>

namespace curbplan {

namespace {

int severity(LegalityKind k) {
  switch (k) {
    case LegalityKind::illegal: return 2;
    case LegalityKind::time_limited: return 1;
    case LegalityKind::legal: return 0;
  }
  return 0;
}

int normalize_weekly(int t) {
  t %= kMinutesPerWeek;
  if (t < 0) t += kMinutesPerWeek;
  return t;
}

/// Governing rule among `covering`: highest priority, ties toward the more
/// restrictive status, then lowest rule id for determinism.
const LegalityRule* pick_governing(const std::vector<const LegalityRule*>& covering) {
  const LegalityRule* best = nullptr;
  for (const auto* r : covering) {
    if (!best) {
      best = r;
      continue;
    }
    if (r->priority != best->priority) {
      if (r->priority > best->priority) best = r;
    } else if (severity(r->status.kind) != severity(best->status.kind)) {
      if (severity(r->status.kind) > severity(best->status.kind)) best = r;
    } else if (r->id < best->id) {
      best = r;
    }
  }
  return best;
}

std::vector<const LegalityRule*> covering_rules(const std::vector<LegalityRule>& rules,
                                                int segment_id, int t) {
  std::vector<const LegalityRule*> out;
  for (const auto& r : rules) {
    if (r.segment_id == segment_id && rule_covers(r, t)) out.push_back(&r);
  }
  return out;
}

double status_risk(const LegalityRule& rule, double expected_dwell_minutes) {
  switch (rule.status.kind) {
    case LegalityKind::legal:
      return 0.0;
    case LegalityKind::illegal:
      return 1.0;
    case LegalityKind::time_limited:
      if (expected_dwell_minutes <= rule.status.limit_minutes) return 0.0;
      return rule.enforcement_rate.value_or(0.5);
  }
  return 0.5;
}

}  // namespace

bool rule_covers(const LegalityRule& rule, int weekly_minute) {
  const int t = normalize_weekly(weekly_minute);
  const int day = t / kMinutesPerDay;
  const int minute = t % kMinutesPerDay;
  for (const auto& w : rule.schedule) {
    if (w.days.count(day) && w.start_minute <= minute && minute < w.end_minute) {
      return true;
    }
  }
  return false;
}

Legality legality_at(const std::vector<LegalityRule>& rules, int segment_id,
                     int weekly_minute) {
  const auto covering = covering_rules(rules, segment_id, weekly_minute);
  const auto* gov = pick_governing(covering);
  if (!gov) return Legality{LegalityKind::legal, 0};
  return gov->status;
}

RiskAssessment risk_of(const std::vector<LegalityRule>& rules, int segment_id,
                       int weekly_minute, double expected_dwell_minutes,
                       const std::vector<SignReading>* readings) {
  const auto covering = covering_rules(rules, segment_id, weekly_minute);

  for (const RuleSource source :
       {RuleSource::structured, RuleSource::historical, RuleSource::vlm}) {
    std::vector<const LegalityRule*> of_source;
    for (const auto* r : covering) {
      if (r->source == source) of_source.push_back(r);
    }
    const auto* gov = pick_governing(of_source);
    if (!gov) continue;

    double risk = 0.5;
    switch (source) {
      case RuleSource::structured:
        risk = status_risk(*gov, expected_dwell_minutes);
        break;
      case RuleSource::historical:
        risk = gov->enforcement_rate.value_or(0.5);
        break;
      case RuleSource::vlm:
        if (gov->sign_ambiguous) {
          risk = 0.5;
          if (readings) {
            const auto it = std::find_if(
                readings->begin(), readings->end(),
                [&](const SignReading& s) { return s.rule_id == gov->id; });
            if (it != readings->end() && it->legible) risk = 1.0 - it->confidence;
          }
        } else {
          risk = status_risk(*gov, expected_dwell_minutes);
        }
        break;
    }
    return {risk, gov->fine};
  }
  return {0.5, 0.0};
}

bool illegal_entire_day(const std::vector<LegalityRule>& rules, int segment_id,
                        int weekly_minute) {
  const int t = normalize_weekly(weekly_minute);
  const int day_start = (t / kMinutesPerDay) * kMinutesPerDay;
  for (int m = 0; m < kMinutesPerDay; ++m) {
    if (legality_at(rules, segment_id, day_start + m).kind != LegalityKind::illegal) {
      return false;
    }
  }
  return true;
}

const char* to_string(LegalityKind k) {
  switch (k) {
    case LegalityKind::legal: return "legal";
    case LegalityKind::time_limited: return "time_limited";
    case LegalityKind::illegal: return "illegal";
  }
  return "legal";
}

const char* to_string(RuleSource s) {
  switch (s) {
    case RuleSource::structured: return "structured";
    case RuleSource::historical: return "historical";
    case RuleSource::vlm: return "vlm";
  }
  return "structured";
}

}  // namespace curbplan
