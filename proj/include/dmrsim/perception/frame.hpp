#pragma once

#include <cstdint>
#include <vector>

#include "dmrsim/perception/scenario.hpp"
#include "dmrsim/sim/rng.hpp"

namespace dmrsim::perception {

/// Axis-aligned image-plane rectangle; the detection's ground contact point
/// is taken at the bottom-center.
struct Rect {
  double x = 0.0;
  double y = 0.0;
  double w = 0.0;
  double h = 0.0;

  Vec2 bottom_center() const { return {x + w / 2.0, y + h}; }
};

struct BoundingBox {
  enum class Class { Human, Object };
  Class cls = Class::Human;
  double confidence = 1.0;
  Rect footprint;     // image plane
  Vec2 ground_point;  // workspace metres, as synthesized
};

struct DetectionFrame {
  std::int64_t frame_id = 0;
  sim::VirtualTime captured_at;
  std::vector<BoundingBox> boxes;
  /// Script ground truth at capture time, independent of the sensing model.
  double true_distance_m = kNoTarget;
};

/// Synthesizes the detection frame for instant t. Per present actor: one
/// human box at the actor's bearing, range perturbed by the noise model, and
/// omitted entirely with probability miss_rate (one bernoulli draw, then one
/// normal draw for surviving boxes, in actor order).
DetectionFrame next_frame(const ScenarioScript& script, sim::VirtualTime t,
                          std::int64_t frame_id, const Calibration& calib,
                          sim::RngStream& rng);

/// Minimum over boxes of the calibrated ground-point distance to the robot
/// origin; +inf for an empty frame.
double project_distance(const DetectionFrame& frame, const Calibration& calib);

}  // namespace dmrsim::perception
