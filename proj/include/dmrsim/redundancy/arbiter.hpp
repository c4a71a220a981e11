#pragma once

#include <functional>
#include <map>
#include <vector>

#include "dmrsim/node/config.hpp"
#include "dmrsim/node/messages.hpp"
#include "dmrsim/redundancy/merge.hpp"
#include "dmrsim/sim/engine.hpp"

namespace dmrsim::redundancy {

/// One row of the merged actuation trace; rows appear whenever the command
/// or the contributor set changes.
struct MergedRow {
  std::int64_t time_us = 0;
  SafetyCommand command = SafetyCommand::EmergencyStop;
  std::vector<NodeId> contributors;
};

/// Safety coordinator: sole owner of the NodeStatus values and sole writer
/// of the merged output. Commands and fault reports arrive through modeled
/// channels; recovery completion is a scheduled event.
class Arbiter {
 public:
  Arbiter(sim::Engine& engine, node::RecoveryConfig recovery);

  void register_node(NodeId id);

  /// Hooks invoked on status transitions so the world can stop and restart
  /// the affected node and its monitor.
  std::function<void(NodeId)> on_take_out_of_service;
  std::function<void(NodeId)> on_return_to_service;

  void on_command(const node::CommandMessage& msg);
  void on_fault_report(const node::FaultReport& report);

  /// Faulted -> Recovering(until now + recovery duration). Throws
  /// std::logic_error unless the node is currently Faulted.
  sim::VirtualTime begin_recovery(NodeId id, FaultKind kind);

  const NodeStatus& status(NodeId id) const;
  const std::vector<MergedRow>& merged_rows() const { return rows_; }
  MergedOutput current() const;

 private:
  struct Entry {
    NodeStatus status;
    std::optional<SafetyCommand> latest;
  };

  void mark_faulted(NodeId id, FaultKind kind);
  void complete_recovery(NodeId id);
  void recompute();
  Entry& entry(NodeId id);
  const Entry& entry(NodeId id) const;

  sim::Engine& engine_;
  node::RecoveryConfig recovery_;
  std::map<NodeId, Entry> nodes_;
  std::vector<MergedRow> rows_;
};

}  // namespace dmrsim::redundancy
