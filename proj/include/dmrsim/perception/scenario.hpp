#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "dmrsim/sim/latency.hpp"
#include "dmrsim/sim/time.hpp"

namespace dmrsim::perception {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

/// Invertible planar map from image-plane coordinates to workspace floor
/// coordinates (metres). Degenerate matrices are rejected on construction.
class Calibration {
 public:
  Calibration() : Calibration(1, 0, 0, 1, 0, 0) {}
  Calibration(double a, double b, double c, double d, double tx, double ty);

  Vec2 apply(Vec2 image) const;
  Vec2 invert(Vec2 world) const;

 private:
  double a_, b_, c_, d_, tx_, ty_;
  double det_;
};

/// One tracked person's range profile: piecewise-linear distance over time,
/// walked along a fixed bearing from the robot base. Outside the waypoint
/// span the actor is absent from the cell.
struct ActorTrack {
  struct Waypoint {
    std::int64_t at_us = 0;
    double distance_m = 0.0;
  };
  std::vector<Waypoint> waypoints;
  double bearing_rad = 0.0;

  bool present_at(sim::VirtualTime t) const;
  double distance_at(sim::VirtualTime t) const;  // +inf when absent
};

enum class ScenarioKind { Baseline, Occlusion, MultiTarget };

std::string_view to_string(ScenarioKind k);
ScenarioKind scenario_kind_from_string(std::string_view s);

/// Deterministic stand-in for a camera feed: ground-truth actor motion plus
/// a simple sensing model (additive range noise, per-box miss probability).
struct ScenarioScript {
  ScenarioKind kind = ScenarioKind::Baseline;
  std::string name = "scenario";
  sim::Duration frame_period{20'000};
  double detection_noise_m = 0.0;
  double miss_rate = 0.0;
  std::vector<ActorTrack> actors;

  /// Throws sim::ConfigError on out-of-range parameters.
  void validate() const;

  sim::VirtualTime end_time() const;

  /// Ground-truth separation: minimum over present actors, +inf when none.
  double true_distance(sim::VirtualTime t) const;
};

inline constexpr double kNoTarget = std::numeric_limits<double>::infinity();

}  // namespace dmrsim::perception
