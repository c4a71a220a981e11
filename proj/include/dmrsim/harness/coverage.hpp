#pragma once

#include <cstdint>
#include <vector>

#include "dmrsim/harness/measure.hpp"
#include "dmrsim/harness/safety.hpp"

namespace dmrsim::harness {

/// Outcome of one injected fault against the demand schedule.
struct CoverageEntry {
  FaultRecord record;
  bool covered = false;
};

struct CoverageReport {
  std::vector<CoverageEntry> entries;
  std::uint64_t injected = 0;
  std::uint64_t covered = 0;

  double dc() const {
    return injected == 0 ? 1.0
                         : static_cast<double>(covered) / static_cast<double>(injected);
  }
};

/// A fault is covered when it is detected no later than the first safety
/// demand strictly after its injection. Faults with no subsequent demand are
/// covered vacuously: nothing relied on the redundancy in time.
/// `demands` must be sorted ascending.
CoverageReport diagnostic_coverage(const std::vector<FaultRecord>& records,
                                   const std::vector<RationalTime>& demands);

/// Periodic demand instants k*period for k >= 1 up to `horizon` inclusive.
std::vector<RationalTime> periodic_demands(sim::Duration period, sim::VirtualTime horizon);

}  // namespace dmrsim::harness
