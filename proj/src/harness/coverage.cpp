#include "dmrsim/harness/coverage.hpp"

#include <algorithm>

namespace dmrsim::harness {

CoverageReport diagnostic_coverage(const std::vector<FaultRecord>& records,
                                   const std::vector<RationalTime>& demands) {
  CoverageReport report;
  for (const auto& rec : records) {
    CoverageEntry entry{rec, false};
    RationalTime injected_at = RationalTime::of(rec.injection.inject_at.micros);
    auto next = std::find_if(demands.begin(), demands.end(),
                             [&](const RationalTime& d) { return injected_at < d; });
    if (next == demands.end()) {
      entry.covered = true;
    } else if (rec.detected_at) {
      entry.covered = !(*next < RationalTime::of(rec.detected_at->micros));
    }
    report.injected += 1;
    if (entry.covered) report.covered += 1;
    report.entries.push_back(std::move(entry));
  }
  return report;
}

std::vector<RationalTime> periodic_demands(sim::Duration period, sim::VirtualTime horizon) {
  std::vector<RationalTime> demands;
  if (period.count() <= 0) return demands;
  for (std::int64_t t = period.count(); t <= horizon.micros; t += period.count())
    demands.push_back(RationalTime::of(t));
  return demands;
}

}  // namespace dmrsim::harness
