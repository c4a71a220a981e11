#include <doctest.h>

#include <cmath>
#include <limits>

#include "dmrsim/perception/frame.hpp"
#include "dmrsim/perception/scenario.hpp"
#include "dmrsim/perception/zones.hpp"
#include "dmrsim/rules/predicate.hpp"

using namespace dmrsim;
using namespace dmrsim::perception;

namespace {

ActorTrack make_track(std::initializer_list<ActorTrack::Waypoint> wps,
                      double bearing_rad = 0.0) {
  ActorTrack t;
  t.waypoints = wps;
  t.bearing_rad = bearing_rad;
  return t;
}

rules::SafetyPredicate default_predicate() {
  auto pr = rules::parse_rules(
      "rule cell {\n  v_max = 2.0 m/s\n  t_stop_budget = 60 ms\n"
      "  d_brake = 0.3 m\n  d_min = 0.6 m\n  warning_margin = 0.45 m\n}");
  REQUIRE(pr.ok());
  auto cr = rules::compile_rules(*pr.document);
  REQUIRE(cr.ok());
  return *cr.predicate;
}

}  // namespace

TEST_CASE("track interpolates linearly between waypoints") {
  ActorTrack t = make_track({{1'000'000, 4.0}, {3'000'000, 2.0}});
  CHECK(t.distance_at(sim::VirtualTime{1'000'000}) == doctest::Approx(4.0));
  CHECK(t.distance_at(sim::VirtualTime{2'000'000}) == doctest::Approx(3.0));
  CHECK(t.distance_at(sim::VirtualTime{2'500'000}) == doctest::Approx(2.5));
  CHECK(t.distance_at(sim::VirtualTime{3'000'000}) == doctest::Approx(2.0));
}

TEST_CASE("track is absent outside its waypoint span") {
  ActorTrack t = make_track({{1'000'000, 4.0}, {3'000'000, 2.0}});
  CHECK_FALSE(t.present_at(sim::VirtualTime{999'999}));
  CHECK(t.present_at(sim::VirtualTime{1'000'000}));
  CHECK(t.present_at(sim::VirtualTime{3'000'000}));
  CHECK_FALSE(t.present_at(sim::VirtualTime{3'000'001}));
  CHECK(std::isinf(t.distance_at(sim::VirtualTime{0})));
}

TEST_CASE("true separation is the minimum over present actors") {
  ScenarioScript s;
  s.actors.push_back(make_track({{0, 5.0}, {10'000'000, 5.0}}));
  s.actors.push_back(make_track({{2'000'000, 3.0}, {4'000'000, 1.0}}, 0.5));
  CHECK(s.true_distance(sim::VirtualTime{1'000'000}) == doctest::Approx(5.0));
  CHECK(s.true_distance(sim::VirtualTime{3'000'000}) == doctest::Approx(2.0));
  CHECK(s.true_distance(sim::VirtualTime{4'000'000}) == doctest::Approx(1.0));
  CHECK(std::isinf(s.true_distance(sim::VirtualTime{20'000'000})));
}

TEST_CASE("scenario validation rejects malformed scripts") {
  ScenarioScript s;
  s.actors.push_back(make_track({{0, 5.0}, {1'000'000, 5.0}}));
  CHECK_NOTHROW(s.validate());

  ScenarioScript bad = s;
  bad.frame_period = sim::Duration{0};
  CHECK_THROWS_AS(bad.validate(), sim::ConfigError);

  bad = s;
  bad.miss_rate = 1.0;
  CHECK_THROWS_AS(bad.validate(), sim::ConfigError);

  bad = s;
  bad.detection_noise_m = -0.1;
  CHECK_THROWS_AS(bad.validate(), sim::ConfigError);

  bad = s;
  bad.actors[0].waypoints = {{1'000'000, 5.0}, {1'000'000, 4.0}};
  CHECK_THROWS_AS(bad.validate(), sim::ConfigError);

  bad = s;
  bad.kind = ScenarioKind::MultiTarget;
  CHECK_THROWS_AS(bad.validate(), sim::ConfigError);
}

TEST_CASE("calibration applies an affine map and inverts it exactly") {
  // Maps image (1, 0) to world (3, 4): distance 5 from the origin.
  Calibration calib(3, 0, 4, 0.5, 0, 0);
  Vec2 w = calib.apply({1.0, 0.0});
  CHECK(std::hypot(w.x, w.y) == doctest::Approx(5.0));

  sim::RngStream rng(11, "calib");
  for (int i = 0; i < 200; ++i) {
    Vec2 p{rng.uniform(-10.0, 10.0), rng.uniform(-10.0, 10.0)};
    Vec2 round = calib.invert(calib.apply(p));
    CHECK(round.x == doctest::Approx(p.x).epsilon(1e-9));
    CHECK(round.y == doctest::Approx(p.y).epsilon(1e-9));
  }

  CHECK_THROWS_AS(Calibration(1, 2, 2, 4, 0, 0), sim::ConfigError);
}

TEST_CASE("zone boundaries are half-open") {
  rules::SafetyPredicate pred = default_predicate();
  // Stop zone ends at d_min = 0.6 m; warning band ends at 1.05 m.
  CHECK(classify_zone(0.599999, pred) == Zone::Stop);
  CHECK(classify_zone(0.6, pred) == Zone::Warning);
  CHECK(classify_zone(1.049999, pred) == Zone::Warning);
  CHECK(classify_zone(1.05, pred) == Zone::Safe);
  CHECK(classify_zone(0.0, pred) == Zone::Stop);
  CHECK(classify_zone(std::numeric_limits<double>::infinity(), pred) ==
        Zone::Safe);
}

TEST_CASE("noiseless frames report ground truth exactly") {
  ScenarioScript s;
  s.actors.push_back(make_track({{0, 3.0}, {10'000'000, 3.0}}, 0.7));
  Calibration calib;
  sim::RngStream rng(1, "frames");
  DetectionFrame f = next_frame(s, sim::VirtualTime{5'000'000}, 42, calib, rng);
  CHECK(f.frame_id == 42);
  REQUIRE(f.boxes.size() == 1);
  CHECK(f.true_distance_m == doctest::Approx(3.0));
  CHECK(project_distance(f, calib) == doctest::Approx(3.0).epsilon(1e-9));
}

TEST_CASE("frames past the script end are empty") {
  ScenarioScript s;
  s.actors.push_back(make_track({{0, 3.0}, {1'000'000, 3.0}}));
  Calibration calib;
  sim::RngStream rng(1, "frames");
  DetectionFrame f = next_frame(s, sim::VirtualTime{1'000'001}, 0, calib, rng);
  CHECK(f.boxes.empty());
  CHECK(project_distance(f, calib) == kNoTarget);
}

TEST_CASE("projected distance recovers range through a nontrivial calibration") {
  ScenarioScript s;
  s.actors.push_back(make_track({{0, 2.5}, {10'000'000, 2.5}}, -0.4));
  Calibration calib(0.02, 0.001, -0.003, 0.025, 1.5, -0.75);
  sim::RngStream rng(9, "proj");
  DetectionFrame f = next_frame(s, sim::VirtualTime{100'000}, 0, calib, rng);
  REQUIRE(f.boxes.size() == 1);
  CHECK(project_distance(f, calib) == doctest::Approx(2.5).epsilon(1e-9));
}

TEST_CASE("range noise has the configured spread") {
  ScenarioScript s;
  s.detection_noise_m = 0.05;
  s.actors.push_back(make_track({{0, 3.0}, {1'000'000'000, 3.0}}));
  Calibration calib;
  sim::RngStream rng(21, "noise");
  double sum = 0.0, sum_sq = 0.0;
  const int n = 20'000;
  for (int i = 0; i < n; ++i) {
    DetectionFrame f =
        next_frame(s, sim::VirtualTime{i * 1'000}, i, calib, rng);
    REQUIRE(f.boxes.size() == 1);
    double d = project_distance(f, calib);
    sum += d;
    sum_sq += d * d;
  }
  double mean = sum / n;
  double var = sum_sq / n - mean * mean;
  CHECK(mean == doctest::Approx(3.0).epsilon(0.005));
  CHECK(std::sqrt(var) == doctest::Approx(0.05).epsilon(0.05));
}

TEST_CASE("misses drop boxes at the configured rate") {
  ScenarioScript s;
  s.miss_rate = 0.2;
  s.actors.push_back(make_track({{0, 3.0}, {1'000'000'000, 3.0}}));
  Calibration calib;
  sim::RngStream rng(3, "miss");
  int present = 0;
  const int n = 20'000;
  for (int i = 0; i < n; ++i) {
    DetectionFrame f =
        next_frame(s, sim::VirtualTime{i * 1'000}, i, calib, rng);
    present += static_cast<int>(f.boxes.size());
  }
  double rate = 1.0 - static_cast<double>(present) / n;
  CHECK(rate == doctest::Approx(0.2).epsilon(0.05));
}

TEST_CASE("multi-actor frames project the nearest detection") {
  ScenarioScript s;
  s.kind = ScenarioKind::MultiTarget;
  s.actors.push_back(make_track({{0, 4.0}, {10'000'000, 4.0}}, -0.35));
  s.actors.push_back(make_track({{0, 1.8}, {10'000'000, 1.8}}, 0.8));
  s.validate();
  Calibration calib;
  sim::RngStream rng(7, "multi");
  DetectionFrame f = next_frame(s, sim::VirtualTime{2'000'000}, 0, calib, rng);
  REQUIRE(f.boxes.size() == 2);
  CHECK(project_distance(f, calib) == doctest::Approx(1.8).epsilon(1e-9));
}
