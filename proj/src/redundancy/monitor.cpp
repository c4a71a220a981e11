#include "dmrsim/redundancy/monitor.hpp"

namespace dmrsim::redundancy {

PeerMonitor::PeerMonitor(sim::Engine& engine, NodeId owner, node::Node& peer,
                         node::MonitoringConfig cfg,
                         std::function<NodeStatus::State()> peer_state,
                         std::function<void(const node::FaultReport&)> report)
    : engine_(engine),
      owner_(owner),
      peer_(peer),
      cfg_(std::move(cfg)),
      peer_state_(std::move(peer_state)),
      report_(std::move(report)),
      label_(std::string("node-") + (owner == NodeId::A ? "a" : "b") + ".monitor"),
      last_heartbeat_at_(engine.now()) {}

void PeerMonitor::start() {
  hb_check_ev_ = engine_.schedule_at(engine_.now(), label_, [this] { check_heartbeat(); });
  adc_ev_ = engine_.schedule_at(engine_.now(), label_ + ".adc", [this] { probe_adc(); });
}

void PeerMonitor::observe_heartbeat(const node::Heartbeat&, sim::VirtualTime received_at) {
  last_heartbeat_at_ = received_at;
}

void PeerMonitor::check_heartbeat() {
  if (peer_state_() == NodeStatus::State::Healthy && !reported_ &&
      heartbeat_lost(engine_.now(), last_heartbeat_at_, cfg_.heartbeat_timeout)) {
    report(FaultKind::HeartbeatLoss, Mechanism::SwLogic);
  }
  hb_check_ev_ = engine_.schedule_at(engine_.now() + cfg_.heartbeat_check_period, label_,
                                     [this] { check_heartbeat(); });
}

void PeerMonitor::probe_adc() {
  if (peer_state_() == NodeStatus::State::Healthy && !reported_) {
    node::AdcSample sample{peer_.id(), peer_.rail_voltage(), engine_.now()};
    double threshold = cfg_.brownout_fraction * peer_.nominal_voltage();
    auto low_since = peer_.rail_low_since(threshold);
    if (low_since) {
      if (!low_streak_noted_) {
        low_streak_noted_ = true;
        engine_.note(label_ + ".adc",
                     "rail-low node=" + std::string(to_string(sample.node)) + " mv=" +
                         std::to_string(std::llround(sample.voltage * 1000.0)));
      }
      if (brownout_detected(engine_.now(), low_since, cfg_.adc_period, cfg_.adc_streak))
        report(FaultKind::PowerBrownout, Mechanism::AdcProbing);
    } else {
      low_streak_noted_ = false;
    }
  }
  adc_ev_ = engine_.schedule_at(engine_.now() + cfg_.adc_period, label_ + ".adc",
                                [this] { probe_adc(); });
}

void PeerMonitor::report(FaultKind kind, Mechanism mechanism) {
  reported_ = true;
  engine_.note(label_, "detect node=" + std::string(to_string(peer_.id())) +
                           " kind=" + std::string(to_string(kind)) +
                           " by=" + std::string(to_string(mechanism)));
  if (report_)
    report_(node::FaultReport{peer_.id(), kind, mechanism, engine_.now()});
}

void PeerMonitor::suspend() {
  suspended_ = true;
  engine_.cancel(hb_check_ev_);
  engine_.cancel(adc_ev_);
  hb_check_ev_ = adc_ev_ = {};
}

void PeerMonitor::resume() {
  suspended_ = false;
  last_heartbeat_at_ = engine_.now();
  low_streak_noted_ = false;
  reported_ = false;
  start();
}

void PeerMonitor::on_peer_recovered() {
  last_heartbeat_at_ = engine_.now();
  low_streak_noted_ = false;
  reported_ = false;
}

}  // namespace dmrsim::redundancy
