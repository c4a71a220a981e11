#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dmrsim/node/config.hpp"
#include "dmrsim/node/messages.hpp"
#include "dmrsim/node/slot.hpp"
#include "dmrsim/perception/zones.hpp"
#include "dmrsim/sim/engine.hpp"

namespace dmrsim::node {

/// Cycle guard: a command derived from the current zone may only leave the
/// node when its electrical supply is stable and the measured execution time
/// stayed strictly under the limit. Anything else degrades to EmergencyStop.
inline bool guard(bool adc_stable, sim::Duration t_exec, sim::Duration t_limit) {
  return adc_stable && t_exec < t_limit;
}

inline SafetyCommand zone_to_command(perception::Zone z) {
  switch (z) {
    case perception::Zone::Stop: return SafetyCommand::Category1Stop;
    case perception::Zone::Warning: return SafetyCommand::ReducedSpeed;
    case perception::Zone::Safe: return SafetyCommand::FullSpeed;
  }
  return SafetyCommand::EmergencyStop;
}

/// One compute node of the redundant pair: frame capture, the free-running
/// perceive/infer/post pipeline, heartbeat emission and the local watchdogs,
/// all as events on the shared virtual timeline.
///
/// Fault manifestations are modeled narrowly: silenced heartbeats, a hung
/// inference, a stalled frame feed or a sagging rail. Everything else keeps
/// running until the coordinator takes the node out of service (suspend) and
/// later reboots it (resume).
class Node {
 public:
  Node(sim::Engine& engine, NodeId id, NodeConfig cfg, MonitoringConfig mon,
       const rules::SafetyPredicate& pred, const perception::ScenarioScript& script,
       perception::Calibration calib);

  /// Wiring, set before start(). All optional.
  std::function<void(const CommandMessage&, const PipelineTiming&)> on_command;
  std::function<void(const Heartbeat&)> on_heartbeat;
  std::function<void(const FaultReport&)> on_fault_detected;

  void start();

  NodeId id() const { return id_; }
  const std::string& label() const { return label_; }

  // Fault manifestation hooks (injection side). Clearing is idempotent.
  void inject_heartbeat_silence();
  void clear_heartbeat_silence();
  void inject_npu_hang();
  void clear_npu_hang();
  void inject_sensor_stall();
  void clear_sensor_stall();
  void sag_rail(double fraction_of_nominal);
  void restore_rail();

  // Electrical state, readable by the peer's ADC probe even when the node's
  // software is down.
  double rail_voltage() const { return rail_voltage_; }
  double nominal_voltage() const { return cfg_.nominal_voltage; }
  /// Instant the rail last fell below `threshold`, if it is currently below.
  std::optional<sim::VirtualTime> rail_low_since(double threshold) const;
  bool rail_stable() const;

  // Coordinator control.
  void suspend();
  void resume();
  bool suspended() const { return suspended_; }

  // Introspection for tests and the profiler.
  const std::vector<PipelineTiming>& timings() const { return timings_; }
  std::uint64_t completed_cycles() const { return timings_.size(); }
  const FreshFrameSlot& slot() const { return slot_; }
  sim::VirtualTime last_frame_arrival() const { return last_frame_arrival_; }
  sim::Duration t_limit() const { return t_limit_; }
  /// Stops starting new cycles once n have completed (0 = unlimited).
  void set_cycle_limit(std::uint64_t n) { cycle_limit_ = n; }

 private:
  void schedule_capture(sim::VirtualTime at);
  void schedule_cycle(sim::VirtualTime at);
  void schedule_heartbeat(sim::VirtualTime at);
  void schedule_npu_watchdog(sim::VirtualTime at);
  void schedule_staleness_watchdog(sim::VirtualTime at);

  void do_capture();
  void start_cycle();
  void complete_cycle(std::optional<perception::DetectionFrame> frame,
                      PipelineTiming timing);
  void do_heartbeat();
  void check_npu();
  void check_staleness();

  void cancel_all();
  void report_local(FaultKind kind);

  sim::Engine& engine_;
  NodeId id_;
  std::string label_;
  NodeConfig cfg_;
  MonitoringConfig mon_;
  const rules::SafetyPredicate& pred_;
  const perception::ScenarioScript& script_;
  perception::Calibration calib_;
  sim::Duration t_limit_{0};

  FreshFrameSlot slot_;
  std::vector<PipelineTiming> timings_;
  std::uint64_t cycle_limit_ = 0;
  std::int64_t next_frame_id_ = 0;
  std::uint64_t heartbeat_seq_ = 0;
  sim::VirtualTime last_frame_arrival_;

  bool suspended_ = false;
  bool heartbeat_silenced_ = false;
  bool sensor_stalled_ = false;
  std::optional<sim::VirtualTime> npu_hung_since_;
  bool local_fault_reported_ = false;
  double rail_voltage_;
  sim::VirtualTime rail_changed_at_;

  sim::EventHandle capture_ev_, cycle_ev_, completion_ev_, heartbeat_ev_,
      npu_wd_ev_, staleness_wd_ev_;
};

}  // namespace dmrsim::node
