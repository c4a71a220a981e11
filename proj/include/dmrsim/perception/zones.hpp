#pragma once

#include "dmrsim/rules/predicate.hpp"

namespace dmrsim::perception {

/// Workspace partition around the robot. Every distance lands in exactly one
/// zone:
///   Stop     d <  d_min
///   Warning  d_min <= d < d_min + warning_margin
///   Safe     otherwise (including the no-target sentinel)
enum class Zone { Stop, Warning, Safe };

std::string_view to_string(Zone z);

Zone classify_zone(double distance_m, const rules::SafetyPredicate& pred);

}  // namespace dmrsim::perception
