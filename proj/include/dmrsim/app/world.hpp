#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dmrsim/harness/coverage.hpp"
#include "dmrsim/harness/injector.hpp"
#include "dmrsim/harness/measure.hpp"
#include "dmrsim/harness/safety.hpp"
#include "dmrsim/node/node.hpp"
#include "dmrsim/perception/scenario.hpp"
#include "dmrsim/profiler/profiler.hpp"
#include "dmrsim/redundancy/arbiter.hpp"
#include "dmrsim/redundancy/monitor.hpp"
#include "dmrsim/rules/predicate.hpp"
#include "dmrsim/sim/channel.hpp"
#include "dmrsim/sim/engine.hpp"

namespace dmrsim::app {

/// Everything configurable about the runtime that is not the scenario or the
/// safety rule: per-node settings, supervision cadence, repair durations and
/// the modeled transport latencies.
struct RuntimeConfig {
  node::NodeConfig node;
  node::MonitoringConfig monitoring;
  node::RecoveryConfig recovery;
  sim::Duration heartbeat_latency{0};
  sim::Duration command_latency{0};
  sim::Duration report_latency{0};

  void validate() const {
    node.validate();
    monitoring.validate();
    recovery.validate();
    if (heartbeat_latency.count() < 0 || command_latency.count() < 0 ||
        report_latency.count() < 0)
      throw sim::ConfigError("channel latencies must be >= 0");
  }
};

struct RunSpec {
  std::uint64_t seed = 1;
  sim::Duration duration{60'000'000};
  rules::SafetyPredicate predicate;
  perception::ScenarioScript script;
  RuntimeConfig runtime;
  harness::FaultPlan faults;
  /// False runs node B alone: the degraded single-channel reference.
  bool dual = true;
  bool tracing = true;
  /// Optional periodic safety demand used by the coverage computation, on
  /// top of the scenario's own Stop-Zone entries.
  std::optional<sim::Duration> demand_period;
};

struct NodeSummary {
  std::uint64_t cycles = 0;
  std::uint64_t dropped_frames = 0;
};

struct RunResult {
  std::uint64_t seed = 0;
  std::int64_t duration_us = 0;
  std::vector<redundancy::MergedRow> merged;
  std::vector<harness::FaultRecord> fault_records;
  harness::CoverageReport coverage;
  std::vector<harness::SafetyViolation> violations;
  std::string trace_text;
  NodeSummary node_a, node_b;
  /// Latency decomposition of the cycles each node actually completed.
  std::vector<profiler::LatencyStats> latency_a, latency_b;

  bool safe() const { return violations.empty(); }
};

/// Owns and wires one simulated cell: the redundant pair (or node B alone),
/// the cross monitors, the transport channels, the coordinator and the fault
/// injector. Lifetime is one run.
class World {
 public:
  World(const RunSpec& spec);

  void run();
  RunResult result() const;

  sim::Engine& engine() { return engine_; }
  redundancy::Arbiter& arbiter() { return *arbiter_; }
  node::Node* node(NodeId id);

 private:
  void take_out_of_service(NodeId id);
  void return_to_service(NodeId id);

  RunSpec spec_;
  sim::Engine engine_;
  std::unique_ptr<node::Node> node_a_, node_b_;
  std::unique_ptr<redundancy::PeerMonitor> monitor_on_a_, monitor_on_b_;
  std::unique_ptr<redundancy::Arbiter> arbiter_;
  std::unique_ptr<harness::Injector> injector_;

  std::unique_ptr<sim::Channel<node::Heartbeat>> hb_to_b_, hb_to_a_;
  std::unique_ptr<sim::Channel<node::CommandMessage>> cmd_a_, cmd_b_;
  std::unique_ptr<sim::Channel<node::FaultReport>> rep_a_, rep_b_;
};

RunResult run_simulation(const RunSpec& spec);

}  // namespace dmrsim::app
