#pragma once

#include <optional>

#include "dmrsim/sim/time.hpp"
#include "dmrsim/types.hpp"

namespace dmrsim::redundancy {

/// Coordinator's view of one node. The only legal walk is
/// Healthy -> Faulted(kind) -> Recovering(until) -> Healthy.
struct NodeStatus {
  enum class State { Healthy, Faulted, Recovering };

  State state = State::Healthy;
  std::optional<FaultKind> kind;
  std::optional<sim::VirtualTime> recovering_until;

  bool healthy() const { return state == State::Healthy; }
};

inline std::string_view to_string(NodeStatus::State s) {
  switch (s) {
    case NodeStatus::State::Healthy: return "Healthy";
    case NodeStatus::State::Faulted: return "Faulted";
    case NodeStatus::State::Recovering: return "Recovering";
  }
  return "?";
}

/// Heartbeat supervision rule: the peer is lost once the silence gap
/// strictly exceeds the timeout. A gap exactly at the threshold is filtered.
inline bool heartbeat_lost(sim::VirtualTime now, sim::VirtualTime last_beat,
                           sim::Duration timeout) {
  return now - last_beat > timeout;
}

/// Rail supervision rule: brownout once the rail has been continuously below
/// threshold for strictly more than `streak` sampling periods. A probe window
/// that only partially overlaps the sag reads high, so detection requires the
/// sag to span `streak` full windows; short blips are filtered out.
inline bool brownout_detected(sim::VirtualTime now,
                              std::optional<sim::VirtualTime> low_since,
                              sim::Duration period, int streak) {
  return low_since && now - *low_since > streak * period;
}

}  // namespace dmrsim::redundancy
