#pragma once

#include <functional>
#include <string>

#include "dmrsim/node/messages.hpp"
#include "dmrsim/node/node.hpp"
#include "dmrsim/redundancy/status.hpp"
#include "dmrsim/sim/engine.hpp"

namespace dmrsim::redundancy {

/// Peer supervision hosted on one node of the pair: a heartbeat timeout
/// check and a periodic ADC probe of the peer's supply rail. Detections are
/// reported upward; the monitor never changes a status itself.
///
/// Checks only judge a peer the coordinator still believes Healthy, and both
/// baselines reset when the peer returns to service.
class PeerMonitor {
 public:
  PeerMonitor(sim::Engine& engine, NodeId owner, node::Node& peer,
              node::MonitoringConfig cfg,
              std::function<NodeStatus::State()> peer_state,
              std::function<void(const node::FaultReport&)> report);

  void start();

  /// Receipt path for the peer's heartbeats (wired through the UART channel).
  void observe_heartbeat(const node::Heartbeat& hb, sim::VirtualTime received_at);

  void suspend();
  void resume();
  void on_peer_recovered();

  sim::VirtualTime last_heartbeat_at() const { return last_heartbeat_at_; }

 private:
  void check_heartbeat();
  void probe_adc();
  void report(FaultKind kind, Mechanism mechanism);

  sim::Engine& engine_;
  NodeId owner_;
  node::Node& peer_;
  node::MonitoringConfig cfg_;
  std::function<NodeStatus::State()> peer_state_;
  std::function<void(const node::FaultReport&)> report_;
  std::string label_;

  sim::VirtualTime last_heartbeat_at_;
  bool low_streak_noted_ = false;
  bool reported_ = false;
  bool suspended_ = false;
  sim::EventHandle hb_check_ev_, adc_ev_;
};

}  // namespace dmrsim::redundancy
