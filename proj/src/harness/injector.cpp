#include "dmrsim/harness/injector.hpp"

#include <stdexcept>

namespace dmrsim::harness {

Injector::Injector(sim::Engine& engine, const FaultPlan& plan,
                   std::function<node::Node*(NodeId)> node_of,
                   const redundancy::Arbiter& arbiter)
    : engine_(engine), plan_(plan), node_of_(std::move(node_of)), arbiter_(arbiter) {
  plan_.validate();
}

void Injector::arm() {
  for (const auto& inj : plan_.injections) {
    engine_.schedule_at(inj.inject_at, "injector", [this, inj] { fire(inj); });
    if (inj.duration)
      engine_.schedule_at(inj.inject_at + *inj.duration, "injector",
                          [this, inj] { clear(inj); });
  }
}

void Injector::fire(const FaultInjection& inj) {
  node::Node* target = node_of_(inj.target);
  if (!target) throw std::logic_error("injection targets a node that is not running");
  if (!arbiter_.status(inj.target).healthy()) {
    if (plan_.single_fault)
      throw std::logic_error("injection target is not Healthy at inject time");
    engine_.note("injector", "inject-skipped node=" +
                                 std::string(to_string(inj.target)) +
                                 " kind=" + std::string(to_string(inj.kind)));
    return;
  }
  engine_.note("injector", "inject node=" + std::string(to_string(inj.target)) +
                               " kind=" + std::string(to_string(inj.kind)));
  switch (inj.kind) {
    case FaultKind::HeartbeatLoss:
      target->inject_heartbeat_silence();
      break;
    case FaultKind::NpuHang:
      target->inject_npu_hang();
      break;
    case FaultKind::PowerBrownout:
      target->sag_rail(inj.brownout_depth);
      break;
    case FaultKind::SensorFault:
      target->inject_sensor_stall();
      break;
  }
}

void Injector::clear(const FaultInjection& inj) {
  node::Node* target = node_of_(inj.target);
  if (!target) return;
  // Idempotent by design: a fault already repaired by recovery has nothing
  // left to clear.
  switch (inj.kind) {
    case FaultKind::HeartbeatLoss:
      target->clear_heartbeat_silence();
      break;
    case FaultKind::NpuHang:
      target->clear_npu_hang();
      break;
    case FaultKind::PowerBrownout:
      target->restore_rail();
      break;
    case FaultKind::SensorFault:
      target->clear_sensor_stall();
      break;
  }
  engine_.note("injector", "clear node=" + std::string(to_string(inj.target)) +
                               " kind=" + std::string(to_string(inj.kind)));
}

}  // namespace dmrsim::harness
