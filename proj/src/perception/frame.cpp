#include "dmrsim/perception/frame.hpp"

#include <algorithm>
#include <cmath>

namespace dmrsim::perception {

namespace {

// Nominal person footprint in image-plane units; only the bottom-center
// matters for ranging.
constexpr double kBoxWidth = 0.5;
constexpr double kBoxHeight = 1.7;

}  // namespace

DetectionFrame next_frame(const ScenarioScript& script, sim::VirtualTime t,
                          std::int64_t frame_id, const Calibration& calib,
                          sim::RngStream& rng) {
  DetectionFrame frame;
  frame.frame_id = frame_id;
  frame.captured_at = t;
  frame.true_distance_m = script.true_distance(t);
  if (t > script.end_time()) return frame;  // past-end: empty frame

  for (const auto& actor : script.actors) {
    if (!actor.present_at(t)) continue;
    bool missed = rng.bernoulli(script.miss_rate);
    if (missed) continue;
    double d = actor.distance_at(t);
    if (script.detection_noise_m > 0.0)
      d = std::max(0.0, d + rng.normal(0.0, script.detection_noise_m));
    Vec2 ground{d * std::cos(actor.bearing_rad), d * std::sin(actor.bearing_rad)};
    Vec2 image = calib.invert(ground);
    BoundingBox box;
    box.cls = BoundingBox::Class::Human;
    box.confidence = 1.0;
    box.footprint = Rect{image.x - kBoxWidth / 2.0, image.y - kBoxHeight,
                         kBoxWidth, kBoxHeight};
    box.ground_point = ground;
    frame.boxes.push_back(box);
  }
  return frame;
}

double project_distance(const DetectionFrame& frame, const Calibration& calib) {
  double best = kNoTarget;
  for (const auto& box : frame.boxes) {
    Vec2 g = calib.apply(box.footprint.bottom_center());
    best = std::min(best, std::hypot(g.x, g.y));
  }
  return best;
}

}  // namespace dmrsim::perception
