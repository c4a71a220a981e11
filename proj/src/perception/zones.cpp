#include "dmrsim/perception/zones.hpp"

#include <cmath>

namespace dmrsim::perception {

std::string_view to_string(Zone z) {
  switch (z) {
    case Zone::Stop: return "Stop";
    case Zone::Warning: return "Warning";
    case Zone::Safe: return "Safe";
  }
  return "?";
}

Zone classify_zone(double distance_m, const rules::SafetyPredicate& pred) {
  if (std::isinf(distance_m)) return Zone::Safe;
  // Comparison in micro units keeps boundary cases exact: a distance equal to
  // d_min is Warning, equal to the outer edge is Safe.
  std::int64_t d = std::llround(distance_m * rules::Quantity::kScale);
  std::int64_t stop = pred.d_min.micro();
  std::int64_t outer = stop + pred.warning_margin.micro();
  if (d < stop) return Zone::Stop;
  if (d < outer) return Zone::Warning;
  return Zone::Safe;
}

}  // namespace dmrsim::perception
