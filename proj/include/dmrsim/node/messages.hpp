#pragma once

#include <cstdint>

#include "dmrsim/sim/time.hpp"
#include "dmrsim/types.hpp"

namespace dmrsim::node {

struct Heartbeat {
  NodeId node = NodeId::A;
  std::uint64_t seq = 0;
  sim::VirtualTime sent_at;
};

/// One probe of a peer's supply rail by the cross-wired ADC.
struct AdcSample {
  NodeId node = NodeId::A;
  double voltage = 0.0;
  sim::VirtualTime sampled_at;
};

/// Per-cycle latency decomposition; t_stop is the exact sum of the stages.
struct PipelineTiming {
  sim::Duration t_perc{0};
  sim::Duration t_infer{0};
  sim::Duration t_post{0};
  sim::Duration t_stop{0};
};

/// Fault observation on its way to the coordinator.
struct FaultReport {
  NodeId target = NodeId::A;
  FaultKind kind = FaultKind::HeartbeatLoss;
  Mechanism mechanism = Mechanism::SwLogic;
  sim::VirtualTime detected_at;
};

struct CommandMessage {
  NodeId node = NodeId::A;
  SafetyCommand command = SafetyCommand::EmergencyStop;
  sim::VirtualTime decided_at;
};

}  // namespace dmrsim::node
