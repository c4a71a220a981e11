#pragma once

#include <optional>
#include <vector>

#include "dmrsim/redundancy/status.hpp"

namespace dmrsim::redundancy {

/// Contribution of one node to the merged output: its coordinator-side
/// status and the latest command received from it, if any.
struct Contribution {
  NodeId node = NodeId::A;
  NodeStatus status;
  std::optional<SafetyCommand> latest;
};

struct MergedOutput {
  SafetyCommand command = SafetyCommand::EmergencyStop;
  std::vector<NodeId> contributors;
  sim::VirtualTime decided_at;
};

/// Maximum over Healthy nodes' latest commands. Nodes that are not Healthy,
/// or have not commanded yet, contribute nothing; an empty contributor set
/// falls to the EmergencyStop floor.
MergedOutput merge(const std::vector<Contribution>& inputs, sim::VirtualTime now);

}  // namespace dmrsim::redundancy
