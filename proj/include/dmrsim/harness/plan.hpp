#pragma once

#include <optional>
#include <vector>

#include "dmrsim/sim/latency.hpp"
#include "dmrsim/sim/time.hpp"
#include "dmrsim/types.hpp"

namespace dmrsim::harness {

struct FaultInjection {
  NodeId target = NodeId::A;
  FaultKind kind = FaultKind::HeartbeatLoss;
  sim::VirtualTime inject_at;
  /// PowerBrownout: rail level during the sag as a fraction of nominal.
  double brownout_depth = 0.8;
  /// Transient manifestation window; absent means the fault persists until
  /// repair clears it.
  std::optional<sim::Duration> duration;
};

struct FaultPlan {
  /// Single-fault mode mirrors Category-3 operation: exactly one injection
  /// per run. Multi-fault mode lifts that restriction (overlap allowed).
  bool single_fault = true;
  std::vector<FaultInjection> injections;

  void validate() const {
    if (single_fault && injections.size() > 1)
      throw sim::ConfigError("single-fault mode allows at most one injection per run");
    for (const auto& inj : injections) {
      if (inj.inject_at.micros < 0)
        throw sim::ConfigError("inject_at must be >= 0");
      if (inj.brownout_depth < 0.0 || inj.brownout_depth > 1.0)
        throw sim::ConfigError("brownout_depth must be within [0, 1]");
      if (inj.duration && inj.duration->count() <= 0)
        throw sim::ConfigError("fault duration must be > 0");
    }
  }
};

}  // namespace dmrsim::harness
