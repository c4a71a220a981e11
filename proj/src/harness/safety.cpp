#include "dmrsim/harness/safety.hpp"

#include <algorithm>
#include <cmath>

namespace dmrsim::harness {

namespace {

struct Segment {
  std::int64_t t0, t1;  // us
  std::int64_t d0, d1;  // um
};

/// Crossing instant where the segment's linear distance equals d_min.
/// Pre: d0 != d1 and d_min lies between them.
RationalTime crossing(const Segment& s, std::int64_t d_min) {
  __int128 den = static_cast<__int128>(s.d0) - s.d1;
  __int128 num = static_cast<__int128>(s.t0) * den +
                 (static_cast<__int128>(s.d0) - d_min) *
                     (static_cast<__int128>(s.t1) - s.t0);
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return RationalTime{num, den};
}

void actor_dips(const perception::ActorTrack& actor, std::int64_t d_min,
                std::vector<StopInterval>& out) {
  if (actor.waypoints.size() < 1) return;
  auto um = [](double m) { return std::llround(m * rules::Quantity::kScale); };

  bool inside = um(actor.waypoints.front().distance_m) < d_min;
  RationalTime enter = RationalTime::of(actor.waypoints.front().at_us);

  for (std::size_t i = 0; i + 1 < actor.waypoints.size(); ++i) {
    Segment s{actor.waypoints[i].at_us, actor.waypoints[i + 1].at_us,
              um(actor.waypoints[i].distance_m), um(actor.waypoints[i + 1].distance_m)};
    bool end_inside = s.d1 < d_min;
    if (inside == end_inside) continue;  // linear segments cannot dip and return
    RationalTime tau = s.d0 == s.d1 ? RationalTime::of(s.t1) : crossing(s, d_min);
    if (inside) {
      out.push_back(StopInterval{enter, tau});
    } else {
      enter = tau;
    }
    inside = end_inside;
  }
  if (inside)
    out.push_back(StopInterval{enter, RationalTime::of(actor.waypoints.back().at_us)});
}

}  // namespace

std::vector<StopInterval> stop_zone_intervals(const perception::ScenarioScript& script,
                                              const rules::SafetyPredicate& pred) {
  std::vector<StopInterval> dips;
  for (const auto& actor : script.actors)
    actor_dips(actor, pred.d_min.micro(), dips);
  std::sort(dips.begin(), dips.end(),
            [](const StopInterval& a, const StopInterval& b) { return a.enter < b.enter; });
  // Union of overlapping dips: a demand is a system-level Stop-Zone entry, not
  // a per-actor one.
  std::vector<StopInterval> merged;
  for (const auto& d : dips) {
    if (!merged.empty() && d.enter < merged.back().exit) {
      if (merged.back().exit < d.exit) merged.back().exit = d.exit;
    } else {
      merged.push_back(d);
    }
  }
  return merged;
}

std::vector<RationalTime> scripted_demands(const perception::ScenarioScript& script,
                                           const rules::SafetyPredicate& pred) {
  std::vector<RationalTime> demands;
  for (const auto& d : stop_zone_intervals(script, pred)) demands.push_back(d.enter);
  return demands;
}

std::vector<SafetyViolation> check_safety(
    const std::vector<redundancy::MergedRow>& rows,
    const perception::ScenarioScript& script, const rules::SafetyPredicate& pred,
    sim::VirtualTime window_begin, sim::VirtualTime window_end) {
  std::vector<SafetyViolation> violations;

  // Clip ground-truth dips to the window under scrutiny.
  std::vector<StopInterval> dips;
  for (auto d : stop_zone_intervals(script, pred)) {
    RationalTime w0 = RationalTime::of(window_begin.micros);
    RationalTime w1 = RationalTime::of(window_end.micros);
    if (d.enter < w0) d.enter = w0;
    if (w1 < d.exit) d.exit = w1;
    if (d.enter < d.exit) dips.push_back(d);
  }
  if (dips.empty()) return violations;

  // Collapse same-instant rows to their final state; the merged output is a
  // step function whose value at t is the last row at or before t.
  std::vector<redundancy::MergedRow> steps;
  for (const auto& r : rows) {
    if (!steps.empty() && steps.back().time_us == r.time_us)
      steps.back() = r;
    else
      steps.push_back(r);
  }

  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (steps[i].command != SafetyCommand::FullSpeed) continue;
    RationalTime lo = RationalTime::of(steps[i].time_us);
    RationalTime hi = i + 1 < steps.size()
                          ? RationalTime::of(steps[i + 1].time_us)
                          : RationalTime::of(window_end.micros);
    for (const auto& d : dips) {
      // Strict overlap: a touching endpoint has measure zero and is not a
      // violation (the command changes at exactly that instant).
      if (d.enter < hi && lo < d.exit)
        violations.push_back(SafetyViolation{steps[i].time_us, d.enter.to_ms()});
    }
  }
  return violations;
}

}  // namespace dmrsim::harness
