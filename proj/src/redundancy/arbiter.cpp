#include "dmrsim/redundancy/arbiter.hpp"

#include <stdexcept>

namespace dmrsim::redundancy {

namespace {
std::string contributors_text(const std::vector<NodeId>& c) {
  if (c.empty()) return "-";
  std::string s;
  for (NodeId id : c) s += to_string(id);
  return s;
}
}  // namespace

Arbiter::Arbiter(sim::Engine& engine, node::RecoveryConfig recovery)
    : engine_(engine), recovery_(recovery) {
  recovery_.validate();
}

void Arbiter::register_node(NodeId id) {
  nodes_.emplace(id, Entry{});
  recompute();
}

Arbiter::Entry& Arbiter::entry(NodeId id) {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) throw std::logic_error("unknown node");
  return it->second;
}

const Arbiter::Entry& Arbiter::entry(NodeId id) const {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) throw std::logic_error("unknown node");
  return it->second;
}

const NodeStatus& Arbiter::status(NodeId id) const { return entry(id).status; }

void Arbiter::on_command(const node::CommandMessage& msg) {
  Entry& e = entry(msg.node);
  // Commands from a node already taken out of service are in-flight leftovers.
  if (!e.status.healthy()) return;
  e.latest = msg.command;
  recompute();
}

void Arbiter::on_fault_report(const node::FaultReport& report) {
  Entry& e = entry(report.target);
  if (!e.status.healthy()) {
    engine_.note("arbiter", "duplicate-report node=" +
                                std::string(to_string(report.target)) +
                                " kind=" + std::string(to_string(report.kind)));
    return;
  }
  mark_faulted(report.target, report.kind);
  begin_recovery(report.target, report.kind);
}

void Arbiter::mark_faulted(NodeId id, FaultKind kind) {
  Entry& e = entry(id);
  e.status.state = NodeStatus::State::Faulted;
  e.status.kind = kind;
  e.status.recovering_until.reset();
  // A restarting node wipes its state; its last command must not linger into
  // the merge once it is Healthy again.
  e.latest.reset();
  engine_.note("arbiter", "status node=" + std::string(to_string(id)) +
                              " state=Faulted kind=" + std::string(to_string(kind)));
  if (on_take_out_of_service) on_take_out_of_service(id);
  recompute();
}

sim::VirtualTime Arbiter::begin_recovery(NodeId id, FaultKind kind) {
  Entry& e = entry(id);
  if (e.status.state != NodeStatus::State::Faulted)
    throw std::logic_error("begin_recovery: node is not Faulted");
  sim::VirtualTime until = engine_.now() + recovery_.of(kind);
  e.status.state = NodeStatus::State::Recovering;
  e.status.recovering_until = until;
  engine_.note("arbiter", "status node=" + std::string(to_string(id)) +
                              " state=Recovering until_us=" +
                              std::to_string(until.micros));
  engine_.schedule_at(until, "arbiter.recovery", [this, id] { complete_recovery(id); });
  return until;
}

void Arbiter::complete_recovery(NodeId id) {
  Entry& e = entry(id);
  FaultKind kind = e.status.kind.value_or(FaultKind::HeartbeatLoss);
  e.status = NodeStatus{};  // Healthy
  engine_.note("arbiter", "recovered node=" + std::string(to_string(id)) +
                              " kind=" + std::string(to_string(kind)));
  if (on_return_to_service) on_return_to_service(id);
  recompute();
}

MergedOutput Arbiter::current() const {
  std::vector<Contribution> inputs;
  inputs.reserve(nodes_.size());
  for (const auto& [id, e] : nodes_)
    inputs.push_back(Contribution{id, e.status, e.latest});
  return merge(inputs, engine_.now());
}

void Arbiter::recompute() {
  MergedOutput m = current();
  if (!rows_.empty() && rows_.back().command == m.command &&
      rows_.back().contributors == m.contributors)
    return;
  rows_.push_back(MergedRow{engine_.now().micros, m.command, m.contributors});
  engine_.note("arbiter", "merged cmd=" + std::string(to_string(m.command)) +
                              " contributors=" + contributors_text(m.contributors));
}

}  // namespace dmrsim::redundancy
