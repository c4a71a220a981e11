#include "dmrsim/app/world.hpp"

#include <algorithm>

namespace dmrsim::app {

World::World(const RunSpec& spec) : spec_(spec), engine_(spec.seed) {
  spec_.runtime.validate();
  spec_.script.validate();
  spec_.faults.validate();
  if (spec_.duration.count() <= 0) throw sim::ConfigError("run duration must be > 0");
  engine_.set_tracing(spec_.tracing);

  perception::Calibration calib;  // identity: scripts are authored in metres
  auto make_node = [&](NodeId id) {
    return std::make_unique<node::Node>(engine_, id, spec_.runtime.node,
                                        spec_.runtime.monitoring, spec_.predicate,
                                        spec_.script, calib);
  };
  node_b_ = make_node(NodeId::B);
  if (spec_.dual) node_a_ = make_node(NodeId::A);

  arbiter_ = std::make_unique<redundancy::Arbiter>(engine_, spec_.runtime.recovery);
  if (spec_.dual) arbiter_->register_node(NodeId::A);
  arbiter_->register_node(NodeId::B);
  arbiter_->on_take_out_of_service = [this](NodeId id) { take_out_of_service(id); };
  arbiter_->on_return_to_service = [this](NodeId id) { return_to_service(id); };

  auto make_cmd_channel = [&](const char* name) {
    auto ch = std::make_unique<sim::Channel<node::CommandMessage>>(
        engine_, name, spec_.runtime.command_latency);
    ch->on_receive([this](node::CommandMessage m, sim::VirtualTime) {
      arbiter_->on_command(m);
    });
    return ch;
  };
  auto make_report_channel = [&](const char* name) {
    auto ch = std::make_unique<sim::Channel<node::FaultReport>>(
        engine_, name, spec_.runtime.report_latency);
    ch->on_receive([this](node::FaultReport r, sim::VirtualTime) {
      arbiter_->on_fault_report(r);
    });
    return ch;
  };
  cmd_b_ = make_cmd_channel("link.cmd-b");
  rep_b_ = make_report_channel("link.report-b");
  node_b_->on_command = [this](const node::CommandMessage& m, const node::PipelineTiming&) {
    cmd_b_->send(m);
  };
  node_b_->on_fault_detected = [this](const node::FaultReport& r) { rep_b_->send(r); };

  if (spec_.dual) {
    cmd_a_ = make_cmd_channel("link.cmd-a");
    rep_a_ = make_report_channel("link.report-a");
    node_a_->on_command = [this](const node::CommandMessage& m,
                                 const node::PipelineTiming&) { cmd_a_->send(m); };
    node_a_->on_fault_detected = [this](const node::FaultReport& r) { rep_a_->send(r); };

    // Cross supervision: each node hosts a monitor watching its peer, and
    // heartbeats travel over the modeled UART in both directions.
    auto peer_state = [this](NodeId peer) {
      return [this, peer] { return arbiter_->status(peer).state; };
    };
    monitor_on_a_ = std::make_unique<redundancy::PeerMonitor>(
        engine_, NodeId::A, *node_b_, spec_.runtime.monitoring, peer_state(NodeId::B),
        [this](const node::FaultReport& r) { rep_a_->send(r); });
    monitor_on_b_ = std::make_unique<redundancy::PeerMonitor>(
        engine_, NodeId::B, *node_a_, spec_.runtime.monitoring, peer_state(NodeId::A),
        [this](const node::FaultReport& r) { rep_b_->send(r); });

    hb_to_b_ = std::make_unique<sim::Channel<node::Heartbeat>>(
        engine_, "uart.a-to-b", spec_.runtime.heartbeat_latency);
    hb_to_b_->on_receive([this](node::Heartbeat hb, sim::VirtualTime) {
      monitor_on_b_->observe_heartbeat(hb, engine_.now());
    });
    hb_to_a_ = std::make_unique<sim::Channel<node::Heartbeat>>(
        engine_, "uart.b-to-a", spec_.runtime.heartbeat_latency);
    hb_to_a_->on_receive([this](node::Heartbeat hb, sim::VirtualTime) {
      monitor_on_a_->observe_heartbeat(hb, engine_.now());
    });
    node_a_->on_heartbeat = [this](const node::Heartbeat& hb) { hb_to_b_->send(hb); };
    node_b_->on_heartbeat = [this](const node::Heartbeat& hb) { hb_to_a_->send(hb); };
  }

  if (!spec_.faults.injections.empty()) {
    injector_ = std::make_unique<harness::Injector>(
        engine_, spec_.faults, [this](NodeId id) { return node(id); }, *arbiter_);
  }
}

node::Node* World::node(NodeId id) {
  if (id == NodeId::A) return node_a_.get();
  return node_b_.get();
}

void World::take_out_of_service(NodeId id) {
  if (node::Node* n = node(id)) n->suspend();
  if (id == NodeId::A && monitor_on_a_) monitor_on_a_->suspend();
  if (id == NodeId::B && monitor_on_b_) monitor_on_b_->suspend();
}

void World::return_to_service(NodeId id) {
  if (node::Node* n = node(id)) n->resume();
  if (id == NodeId::A && monitor_on_a_) monitor_on_a_->resume();
  if (id == NodeId::B && monitor_on_b_) monitor_on_b_->resume();
  // The peer's view of this node restarts from a clean baseline.
  if (id == NodeId::A && monitor_on_b_) monitor_on_b_->on_peer_recovered();
  if (id == NodeId::B && monitor_on_a_) monitor_on_a_->on_peer_recovered();
}

void World::run() {
  if (node_a_) node_a_->start();
  node_b_->start();
  if (monitor_on_a_) monitor_on_a_->start();
  if (monitor_on_b_) monitor_on_b_->start();
  if (injector_) injector_->arm();
  engine_.run_until(sim::kTimeZero + spec_.duration);
}

RunResult World::result() const {
  RunResult r;
  r.seed = spec_.seed;
  r.duration_us = spec_.duration.count();
  r.merged = arbiter_->merged_rows();
  r.fault_records = harness::measure_all(engine_.trace(), spec_.faults);
  r.trace_text = engine_.trace().to_text();

  auto demands = harness::scripted_demands(spec_.script, spec_.predicate);
  if (spec_.demand_period) {
    auto periodic = harness::periodic_demands(*spec_.demand_period,
                                              sim::kTimeZero + spec_.duration);
    demands.insert(demands.end(), periodic.begin(), periodic.end());
    std::sort(demands.begin(), demands.end(),
              [](const harness::RationalTime& a, const harness::RationalTime& b) {
                return a < b;
              });
  }
  r.coverage = harness::diagnostic_coverage(r.fault_records, demands);
  r.violations = harness::check_safety(r.merged, spec_.script, spec_.predicate,
                                       sim::kTimeZero, sim::kTimeZero + spec_.duration);
  auto summarize_node = [](const node::Node& n) {
    std::vector<std::int64_t> perc, infer, post, exec;
    for (const auto& t : n.timings()) {
      perc.push_back(t.t_perc.count());
      infer.push_back(t.t_infer.count());
      post.push_back(t.t_post.count());
      exec.push_back(t.t_stop.count());
    }
    std::vector<profiler::LatencyStats> stats;
    stats.push_back(profiler::summarize("t_perc", perc));
    stats.push_back(profiler::summarize("t_infer", infer));
    stats.push_back(profiler::summarize("t_post", post));
    stats.push_back(profiler::summarize("t_stop", exec));
    return stats;
  };
  if (node_a_) {
    r.node_a.cycles = node_a_->completed_cycles();
    r.node_a.dropped_frames = node_a_->slot().dropped_count();
    r.latency_a = summarize_node(*node_a_);
  }
  r.node_b.cycles = node_b_->completed_cycles();
  r.node_b.dropped_frames = node_b_->slot().dropped_count();
  r.latency_b = summarize_node(*node_b_);
  return r;
}

RunResult run_simulation(const RunSpec& spec) {
  World world(spec);
  world.run();
  return world.result();
}

}  // namespace dmrsim::app
