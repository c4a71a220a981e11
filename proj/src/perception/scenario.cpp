#include "dmrsim/perception/scenario.hpp"

#include <algorithm>
#include <cmath>

namespace dmrsim::perception {

Calibration::Calibration(double a, double b, double c, double d, double tx, double ty)
    : a_(a), b_(b), c_(c), d_(d), tx_(tx), ty_(ty), det_(a * d - b * c) {
  if (std::abs(det_) < 1e-12)
    throw sim::ConfigError("calibration matrix is not invertible");
}

Vec2 Calibration::apply(Vec2 p) const {
  return {a_ * p.x + b_ * p.y + tx_, c_ * p.x + d_ * p.y + ty_};
}

Vec2 Calibration::invert(Vec2 w) const {
  double x = w.x - tx_;
  double y = w.y - ty_;
  return {(d_ * x - b_ * y) / det_, (-c_ * x + a_ * y) / det_};
}

bool ActorTrack::present_at(sim::VirtualTime t) const {
  return !waypoints.empty() && t.micros >= waypoints.front().at_us &&
         t.micros <= waypoints.back().at_us;
}

double ActorTrack::distance_at(sim::VirtualTime t) const {
  if (!present_at(t)) return kNoTarget;
  auto it = std::upper_bound(
      waypoints.begin(), waypoints.end(), t.micros,
      [](std::int64_t v, const Waypoint& w) { return v < w.at_us; });
  if (it == waypoints.begin()) return waypoints.front().distance_m;
  if (it == waypoints.end()) return waypoints.back().distance_m;
  const Waypoint& hi = *it;
  const Waypoint& lo = *(it - 1);
  double f = static_cast<double>(t.micros - lo.at_us) /
             static_cast<double>(hi.at_us - lo.at_us);
  return lo.distance_m + f * (hi.distance_m - lo.distance_m);
}

std::string_view to_string(ScenarioKind k) {
  switch (k) {
    case ScenarioKind::Baseline: return "baseline";
    case ScenarioKind::Occlusion: return "occlusion";
    case ScenarioKind::MultiTarget: return "multi_target";
  }
  return "?";
}

ScenarioKind scenario_kind_from_string(std::string_view s) {
  if (s == "baseline") return ScenarioKind::Baseline;
  if (s == "occlusion") return ScenarioKind::Occlusion;
  if (s == "multi_target") return ScenarioKind::MultiTarget;
  throw sim::ConfigError("unknown scenario kind: " + std::string(s));
}

void ScenarioScript::validate() const {
  if (frame_period.count() <= 0)
    throw sim::ConfigError("frame_period must be > 0");
  if (detection_noise_m < 0.0)
    throw sim::ConfigError("detection_noise must be >= 0");
  if (miss_rate < 0.0 || miss_rate >= 1.0)
    throw sim::ConfigError("miss_rate must be within [0, 1)");
  if (kind == ScenarioKind::MultiTarget && actors.size() < 2)
    throw sim::ConfigError("multi_target scenario requires at least two actors");
  for (const auto& actor : actors) {
    if (actor.waypoints.empty())
      throw sim::ConfigError("actor track has no waypoints");
    for (std::size_t i = 0; i < actor.waypoints.size(); ++i) {
      if (actor.waypoints[i].distance_m < 0.0)
        throw sim::ConfigError("actor distance must be >= 0");
      if (i > 0 && actor.waypoints[i].at_us <= actor.waypoints[i - 1].at_us)
        throw sim::ConfigError("actor waypoints must be strictly time-ordered");
    }
  }
}

sim::VirtualTime ScenarioScript::end_time() const {
  std::int64_t end = 0;
  for (const auto& a : actors)
    if (!a.waypoints.empty()) end = std::max(end, a.waypoints.back().at_us);
  return sim::VirtualTime{end};
}

double ScenarioScript::true_distance(sim::VirtualTime t) const {
  double best = kNoTarget;
  for (const auto& a : actors) best = std::min(best, a.distance_at(t));
  return best;
}

}  // namespace dmrsim::perception
