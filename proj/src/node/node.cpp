#include "dmrsim/node/node.hpp"

#include <utility>

#include "dmrsim/perception/frame.hpp"

namespace dmrsim::node {

namespace {
std::string node_label(NodeId id) {
  return std::string("node-") + (id == NodeId::A ? "a" : "b");
}
}  // namespace

Node::Node(sim::Engine& engine, NodeId id, NodeConfig cfg, MonitoringConfig mon,
           const rules::SafetyPredicate& pred,
           const perception::ScenarioScript& script, perception::Calibration calib)
    : engine_(engine),
      id_(id),
      label_(node_label(id)),
      cfg_(std::move(cfg)),
      mon_(mon),
      pred_(pred),
      script_(script),
      calib_(calib),
      rail_voltage_(cfg_.nominal_voltage),
      rail_changed_at_(engine.now()) {
  cfg_.validate();
  mon_.validate();
  // Time quantities carry micro base units, i.e. whole microseconds.
  t_limit_ = cfg_.t_limit.value_or(sim::Duration{pred_.t_stop_budget.micro()});
  last_frame_arrival_ = engine.now();
}

void Node::start() {
  // Capture before the first cycle so the pipeline never boots on an empty slot.
  schedule_capture(engine_.now());
  schedule_cycle(engine_.now());
  schedule_heartbeat(engine_.now());
  schedule_npu_watchdog(engine_.now());
  schedule_staleness_watchdog(engine_.now());
}

void Node::schedule_capture(sim::VirtualTime at) {
  capture_ev_ = engine_.schedule_at(at, label_ + ".capture", [this] { do_capture(); });
}

void Node::schedule_cycle(sim::VirtualTime at) {
  cycle_ev_ = engine_.schedule_at(at, label_ + ".cycle", [this] { start_cycle(); });
}

void Node::schedule_heartbeat(sim::VirtualTime at) {
  heartbeat_ev_ = engine_.schedule_at(at, label_ + ".heartbeat", [this] { do_heartbeat(); });
}

void Node::schedule_npu_watchdog(sim::VirtualTime at) {
  npu_wd_ev_ = engine_.schedule_at(at, label_ + ".npu-watchdog", [this] { check_npu(); });
}

void Node::schedule_staleness_watchdog(sim::VirtualTime at) {
  staleness_wd_ev_ =
      engine_.schedule_at(at, label_ + ".staleness", [this] { check_staleness(); });
}

void Node::do_capture() {
  if (!sensor_stalled_) {
    auto frame = perception::next_frame(script_, engine_.now(), next_frame_id_++,
                                        calib_, engine_.stream(label_ + "/capture"));
    slot_.push(std::move(frame));
    last_frame_arrival_ = engine_.now();
  }
  schedule_capture(engine_.now() + script_.frame_period);
}

void Node::start_cycle() {
  cycle_ev_ = {};
  if (cycle_limit_ != 0 && timings_.size() >= cycle_limit_) return;

  std::optional<perception::DetectionFrame> frame = slot_.pop();
  PipelineTiming timing;
  timing.t_perc = cfg_.stages.t_perc.sample(engine_.stream(label_ + "/t_perc"));
  timing.t_infer = cfg_.stages.t_infer.sample(engine_.stream(label_ + "/t_infer"));
  timing.t_post = cfg_.stages.t_post.sample(engine_.stream(label_ + "/t_post"));
  timing.t_stop = timing.t_perc + timing.t_infer + timing.t_post;

  if (npu_hung_since_) {
    // The inference call never returns; only the watchdog can end this.
    return;
  }
  completion_ev_ = engine_.schedule_at(
      engine_.now() + timing.t_stop, label_ + ".emit",
      [this, f = std::move(frame), timing]() mutable {
        complete_cycle(std::move(f), timing);
      });
}

void Node::complete_cycle(std::optional<perception::DetectionFrame> frame,
                          PipelineTiming timing) {
  completion_ev_ = {};
  timings_.push_back(timing);
  if (frame) {
    // An observed frame with no humans is a Safe reading; a missing frame is
    // no reading at all, so the node stays silent for this cycle.
    double d = perception::project_distance(*frame, calib_);
    perception::Zone zone = perception::classify_zone(d, pred_);
    SafetyCommand cmd = guard(rail_stable(), timing.t_stop, t_limit_)
                            ? zone_to_command(zone)
                            : SafetyCommand::EmergencyStop;
    engine_.note(label_ + ".emit",
                 "cmd=" + std::string(to_string(cmd)) +
                     " zone=" + std::string(perception::to_string(zone)) +
                     " t_exec_us=" + std::to_string(timing.t_stop.count()));
    if (on_command)
      on_command(CommandMessage{id_, cmd, engine_.now()}, timing);
  } else {
    engine_.note(label_ + ".emit", "no-frame");
  }
  schedule_cycle(engine_.now());
}

void Node::do_heartbeat() {
  if (!heartbeat_silenced_) {
    Heartbeat hb{id_, heartbeat_seq_++, engine_.now()};
    if (on_heartbeat) on_heartbeat(hb);
  }
  schedule_heartbeat(engine_.now() + cfg_.heartbeat_period);
}

void Node::check_npu() {
  if (npu_hung_since_ && !local_fault_reported_ &&
      engine_.now() - *npu_hung_since_ > mon_.inference_watchdog_period) {
    report_local(FaultKind::NpuHang);
  }
  schedule_npu_watchdog(engine_.now() + mon_.inference_watchdog_period);
}

void Node::check_staleness() {
  if (!local_fault_reported_ &&
      engine_.now() - last_frame_arrival_ > mon_.staleness_threshold) {
    report_local(FaultKind::SensorFault);
  }
  schedule_staleness_watchdog(engine_.now() + mon_.staleness_check_period);
}

void Node::report_local(FaultKind kind) {
  local_fault_reported_ = true;
  engine_.note(label_, "detect node=" + std::string(to_string(id_)) +
                           " kind=" + std::string(to_string(kind)) +
                           " by=" + std::string(to_string(mechanism_of(kind))));
  if (on_fault_detected)
    on_fault_detected(FaultReport{id_, kind, mechanism_of(kind), engine_.now()});
}

void Node::inject_heartbeat_silence() { heartbeat_silenced_ = true; }
void Node::clear_heartbeat_silence() { heartbeat_silenced_ = false; }

void Node::inject_npu_hang() {
  npu_hung_since_ = engine_.now();
  engine_.cancel(completion_ev_);
  completion_ev_ = {};
}

void Node::clear_npu_hang() {
  if (!npu_hung_since_) return;
  npu_hung_since_.reset();
  // A cleared hang with no cycle event pending means the pipeline stalled
  // out; restart it unless the coordinator has us out of service.
  if (!suspended_ && !cycle_ev_.valid() && !completion_ev_.valid())
    schedule_cycle(engine_.now());
}

void Node::inject_sensor_stall() { sensor_stalled_ = true; }
void Node::clear_sensor_stall() { sensor_stalled_ = false; }

void Node::sag_rail(double fraction_of_nominal) {
  rail_voltage_ = fraction_of_nominal * cfg_.nominal_voltage;
  rail_changed_at_ = engine_.now();
}

void Node::restore_rail() {
  rail_voltage_ = cfg_.nominal_voltage;
  rail_changed_at_ = engine_.now();
}

std::optional<sim::VirtualTime> Node::rail_low_since(double threshold) const {
  if (rail_voltage_ < threshold) return rail_changed_at_;
  return std::nullopt;
}

bool Node::rail_stable() const {
  return rail_voltage_ >= mon_.brownout_fraction * cfg_.nominal_voltage;
}

void Node::cancel_all() {
  engine_.cancel(capture_ev_);
  engine_.cancel(cycle_ev_);
  engine_.cancel(completion_ev_);
  engine_.cancel(heartbeat_ev_);
  engine_.cancel(npu_wd_ev_);
  engine_.cancel(staleness_wd_ev_);
  capture_ev_ = cycle_ev_ = completion_ev_ = heartbeat_ev_ = npu_wd_ev_ =
      staleness_wd_ev_ = {};
}

void Node::suspend() {
  cancel_all();
  suspended_ = true;
  slot_.clear();
}

void Node::resume() {
  suspended_ = false;
  heartbeat_silenced_ = false;
  sensor_stalled_ = false;
  npu_hung_since_.reset();
  local_fault_reported_ = false;
  restore_rail();
  slot_.clear();
  last_frame_arrival_ = engine_.now();
  start();
}

}  // namespace dmrsim::node
