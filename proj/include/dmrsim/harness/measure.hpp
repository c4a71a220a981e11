#pragma once

#include <optional>
#include <vector>

#include "dmrsim/harness/plan.hpp"
#include "dmrsim/sim/trace.hpp"

namespace dmrsim::harness {

/// Detection and repair instants for one injection, read back from the run
/// trace. Both latencies are derived, never configured directly:
///   t_det = detected_at - inject_at, t_rec = recovered_at - detected_at.
struct FaultRecord {
  FaultInjection injection;
  std::optional<sim::VirtualTime> detected_at;
  std::optional<Mechanism> detected_by;
  std::optional<sim::VirtualTime> recovered_at;

  bool detected() const { return detected_at.has_value(); }
  std::optional<sim::Duration> t_det() const {
    if (!detected_at) return std::nullopt;
    return *detected_at - injection.inject_at;
  }
  std::optional<sim::Duration> t_rec() const {
    if (!detected_at || !recovered_at) return std::nullopt;
    return *recovered_at - *detected_at;
  }
};

/// Extracts the record for one injection by scanning the trace for the
/// detector's "detect" note and the coordinator's "recovered" note.
FaultRecord measure(const sim::SimulationTrace& trace, const FaultInjection& inj);

std::vector<FaultRecord> measure_all(const sim::SimulationTrace& trace,
                                     const FaultPlan& plan);

}  // namespace dmrsim::harness
