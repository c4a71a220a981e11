#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dmrsim/rules/document.hpp"

namespace dmrsim::rules {

/// Backstop clearance applied on top of the velocity-dependent term: 1.5x the
/// worst-case braking distance unless the document overrides margin_factor.
inline constexpr std::int64_t kDefaultMarginFactorMicro = 1'500'000;

/// Compiled, unit-checked safety predicate. The runtime separation check is
///   d >= v_max * max(t_stop_budget, t_stop_measured) + d_offset
/// with d_offset = margin_factor * d_brake. All magnitudes stay in
/// fixed-point micro units end to end.
struct SafetyPredicate {
  Quantity v_max;           // speed
  Quantity t_stop_budget;   // time
  Quantity d_brake;         // length
  Quantity margin_factor;   // scalar
  Quantity d_offset;        // length, = margin_factor * d_brake
  Quantity d_min;           // length, Stop Zone radius
  Quantity warning_margin;  // length, Warning Zone width beyond d_min
  double dc_target = 1.0;
  int category = 3;

  /// v_max * t_stop_budget + d_offset; never exceeds d_min for a compiled
  /// predicate, which is what makes the zone response sufficient.
  Quantity threshold() const;

  /// Separation check with the budget/measured maximum. Boundary inclusive:
  /// d exactly at the threshold is safe.
  bool evaluate(Quantity d, Quantity t_stop_measured) const;

  /// Convenience overload for callers living in double-land.
  bool evaluate_m_ms(double d_m, double t_stop_ms) const;

  nlohmann::json to_json() const;
};

/// Outcome of compilation: either a predicate or the inconsistency abort with
/// the violated constraints spelled out.
struct CompileResult {
  std::optional<SafetyPredicate> predicate;
  std::vector<std::string> violations;

  bool ok() const { return predicate.has_value(); }
  /// Diagnostic text beginning with the abort marker.
  std::string abort_message() const;
};

inline constexpr std::string_view kInconsistentMarker = "Safety Definition Inconsistent";

/// Derives the predicate from a parsed document. Every document either
/// compiles or aborts with at least one named constraint; there is no third
/// outcome.
CompileResult compile_rules(const RuleDocument& doc);

}  // namespace dmrsim::rules
