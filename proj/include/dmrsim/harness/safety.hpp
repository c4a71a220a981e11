#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dmrsim/perception/scenario.hpp"
#include "dmrsim/redundancy/arbiter.hpp"
#include "dmrsim/rules/predicate.hpp"

namespace dmrsim::harness {

/// Instant on the timeline as an exact rational number of microseconds.
/// Stop-Zone crossings of a piecewise-linear trajectory rarely land on whole
/// microseconds; keeping them exact makes interval checks epsilon-free.
struct RationalTime {
  __int128 num = 0;
  __int128 den = 1;  // > 0

  static RationalTime of(std::int64_t micros) { return {micros, 1}; }
  double to_ms() const {
    return static_cast<double>(num) / static_cast<double>(den) / 1000.0;
  }

  friend bool operator<(const RationalTime& a, const RationalTime& b) {
    return a.num * b.den < b.num * a.den;
  }
  friend bool operator<=(const RationalTime& a, const RationalTime& b) {
    return a.num * b.den <= b.num * a.den;
  }
};

/// Open interval during which ground truth puts at least one actor strictly
/// inside the Stop Zone.
struct StopInterval {
  RationalTime enter;
  RationalTime exit;
};

/// Exact union of per-actor dips below d_min, in chronological order.
std::vector<StopInterval> stop_zone_intervals(const perception::ScenarioScript& script,
                                              const rules::SafetyPredicate& pred);

/// Stop-Zone entry instants (the union intervals' left endpoints): the
/// scenario's demands on the safety function.
std::vector<RationalTime> scripted_demands(const perception::ScenarioScript& script,
                                           const rules::SafetyPredicate& pred);

struct SafetyViolation {
  std::int64_t merged_row_time_us = 0;
  double stop_entry_ms = 0.0;
};

/// Verifies that at no instant inside [window_begin, window_end] the merged
/// output reads FullSpeed while ground truth is inside the Stop Zone.
std::vector<SafetyViolation> check_safety(
    const std::vector<redundancy::MergedRow>& rows,
    const perception::ScenarioScript& script, const rules::SafetyPredicate& pred,
    sim::VirtualTime window_begin, sim::VirtualTime window_end);

}  // namespace dmrsim::harness
