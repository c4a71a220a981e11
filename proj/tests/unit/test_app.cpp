#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "dmrsim/app/config_io.hpp"
#include "dmrsim/app/reports.hpp"
#include "dmrsim/app/world.hpp"

using namespace dmrsim;
using namespace dmrsim::app;

namespace fs = std::filesystem;

#ifndef DMRSIM_CONFIG_DIR
#error "DMRSIM_CONFIG_DIR must point at the repository's configs/ directory"
#endif

namespace {

const fs::path kConfigs = DMRSIM_CONFIG_DIR;

fs::path write_temp(const std::string& name, const std::string& content) {
  fs::path p = fs::temp_directory_path() / ("dmrsim-test-" + name);
  std::ofstream out(p, std::ios::trunc);
  out << content;
  return p;
}

RunSpec baseline_spec() {
  RunSpec spec;
  spec.predicate = load_and_compile_rules(kConfigs / "rules" / "cell.rules");
  spec.script = load_scenario(kConfigs / "scenarios" / "scenario1_baseline.json");
  spec.duration = sim::Duration{2'000'000};
  return spec;
}

}  // namespace

TEST_CASE("shipped configuration files load") {
  auto script = load_scenario(kConfigs / "scenarios" / "scenario1_baseline.json");
  CHECK(script.kind == perception::ScenarioKind::Baseline);
  CHECK(script.frame_period == sim::Duration{20'000});
  REQUIRE(script.actors.size() == 1);
  CHECK(script.actors[0].waypoints.front().distance_m == doctest::Approx(5.0));

  auto multi = load_scenario(kConfigs / "scenarios" / "scenario3_multi.json");
  CHECK(multi.kind == perception::ScenarioKind::MultiTarget);
  CHECK(multi.actors.size() == 2);

  RuntimeConfig rt = load_runtime(kConfigs / "runtime" / "default.json");
  CHECK(rt.monitoring.heartbeat_timeout == sim::Duration{50'000});
  CHECK(rt.recovery.heartbeat_loss == sim::Duration{39'627'630});
  CHECK(rt.recovery.npu_hang == sim::Duration{313'610});
  CHECK(rt.recovery.power_brownout == sim::Duration{39'546'520});
  CHECK(rt.recovery.sensor_fault == sim::Duration{1'236'170});

  auto [injections, single] =
      load_fault_injections(kConfigs / "faults" / "table2.json");
  CHECK(single);
  CHECK(injections.size() == 4);

  auto pred = load_and_compile_rules(kConfigs / "rules" / "cell.rules");
  CHECK(pred.threshold().micro() == 570'000);

  auto stages =
      load_stage_profile(kConfigs / "profiles" / "scenario1_constant.json");
  sim::RngStream rng(1, "probe");
  CHECK(stages.t_perc.sample(rng) == sim::Duration{7'500});
  CHECK(stages.t_infer.sample(rng) == sim::Duration{25'050});
  CHECK(stages.t_post.sample(rng) == sim::Duration{2'410});
}

TEST_CASE("an inconsistent shipped rule file is rejected with the abort text") {
  try {
    load_and_compile_rules(kConfigs / "rules" / "undersized_cell.rules");
    FAIL("expected the compile to abort");
  } catch (const sim::ConfigError& e) {
    CHECK(std::string(e.what()).find("Safety Definition Inconsistent") !=
          std::string::npos);
  }
}

TEST_CASE("malformed configuration inputs are rejected") {
  CHECK_THROWS_AS(load_scenario(kConfigs / "scenarios" / "missing.json"),
                  sim::ConfigError);
  CHECK_THROWS_AS(load_scenario(write_temp("bad.json", "{ not json")),
                  sim::ConfigError);
  CHECK_THROWS_AS(
      load_scenario(write_temp(
          "badmiss.json",
          R"({"name":"x","kind":"baseline","frame_period_ms":20,"miss_rate":1.0,
              "actors":[{"bearing_deg":0,"waypoints":[{"t_ms":0,"distance_m":1}]}]})")),
      sim::ConfigError);
  CHECK_THROWS_AS(
      distribution_from_json(nlohmann::json::parse(R"({"type":"exotic"})"), "x"),
      sim::ConfigError);
  CHECK_THROWS_AS(
      distribution_from_json(
          nlohmann::json::parse(R"({"type":"uniform","min_ms":5,"max_ms":2})"),
          "x"),
      sim::ConfigError);
}

TEST_CASE("the configuration digest reacts to any content change") {
  std::uint64_t base = config_fingerprint({"alpha", "beta"});
  CHECK(base == config_fingerprint({"alpha", "beta"}));
  CHECK(base != config_fingerprint({"alpha", "betb"}));
  CHECK(base != config_fingerprint({"beta", "alpha"}));
  // Length framing keeps boundary shifts visible.
  CHECK(base != config_fingerprint({"alphab", "eta"}));
  CHECK(base != config_fingerprint({"alphabeta"}));
}

TEST_CASE("merged and fault tables render fixed byte-exact rows") {
  std::vector<redundancy::MergedRow> rows{
      {0, SafetyCommand::EmergencyStop, {}},
      {34'960, SafetyCommand::FullSpeed, {NodeId::A, NodeId::B}},
  };
  CHECK(merged_csv(rows) ==
        "time_us,command,contributors\n"
        "0,EmergencyStop,-\n"
        "34960,FullSpeed,AB\n");

  harness::FaultRecord detected;
  detected.injection.kind = FaultKind::NpuHang;
  detected.injection.inject_at = sim::VirtualTime{5'000'500};
  detected.detected_at = sim::VirtualTime{5'004'000};
  detected.detected_by = Mechanism::SwLogic;
  detected.recovered_at = sim::VirtualTime{5'317'610};
  harness::FaultRecord undetected;
  undetected.injection.kind = FaultKind::HeartbeatLoss;
  undetected.injection.inject_at = sim::VirtualTime{1'000'000};
  CHECK(faults_csv({detected, undetected}) ==
        "fault,mechanism,t_det_ms,t_rec_ms\n"
        "NpuHang,SW-Logic,3.50,313.61\n"
        "HeartbeatLoss,,,\n");
}

TEST_CASE("millisecond rendering is exact at the boundaries") {
  CHECK(sim::format_ms(0) == "0.00");
  CHECK(sim::format_ms(59'999) == "60.00");  // rounds up across the boundary
  CHECK(sim::format_ms(59'994) == "59.99");
  CHECK(sim::format_ms(2'004'999) == "2005.00");
  CHECK(sim::format_ms(313'610) == "313.61");
  CHECK(sim::format_ms(-1'500) == "-1.50");
}

TEST_CASE("latency reports agree across formats") {
  profiler::ProfileResult r;
  r.cycles = 100;
  r.components.push_back(profiler::LatencyStats{"t_perc", 100, 24'600, 1'000, 7'500.0, 2'180.0});
  r.components.push_back(profiler::LatencyStats{"t_stop", 100, 57'660, 20'000, 34'960.0, 2'520.0});
  r.budget.budget_us = 60'000;
  r.budget.violations = 0;
  r.budget.wcet_gap_ratio = 0.649;

  std::string csv = latency_csv("s1", r);
  CHECK(csv.find("scenario,component,average_ms,wcet_ms,std_dev_ms,n\n") == 0);
  CHECK(csv.find("s1,t_perc,7.50,24.60,2.18,100\n") != std::string::npos);
  CHECK(csv.find("s1,t_stop,34.96,57.66,2.52,100\n") != std::string::npos);

  auto j = nlohmann::json::parse(latency_json("s1", r));
  CHECK(j["scenario"] == "s1");
  CHECK(j["components"][0]["component"] == "t_perc");
  CHECK(j["components"][0]["wcet_ms"] == doctest::Approx(24.6));
  CHECK(j["budget"]["violations"] == 0);

  std::string table = latency_table("s1", r);
  CHECK(table.find("t_stop") != std::string::npos);
  CHECK(table.find("57.66") != std::string::npos);
  CHECK(table.find("wcet gap ratio 0.649") != std::string::npos);
}

TEST_CASE("a quiet dual run boots into the floor and settles at full speed") {
  RunSpec spec = baseline_spec();
  RunResult r = run_simulation(spec);

  REQUIRE_FALSE(r.merged.empty());
  CHECK(r.merged[0].time_us == 0);
  CHECK(r.merged[0].command == SafetyCommand::EmergencyStop);
  // Constant stages: both nodes deliver their first command at 34.96 ms.
  REQUIRE(r.merged.size() >= 3);
  CHECK(r.merged[1].time_us == 34'960);
  CHECK(r.merged[1].command == SafetyCommand::FullSpeed);
  CHECK(r.merged[1].contributors == std::vector<NodeId>{NodeId::A});
  CHECK(r.merged[2].time_us == 34'960);
  CHECK(r.merged[2].contributors == std::vector<NodeId>{NodeId::A, NodeId::B});
  CHECK(r.merged.back().command == SafetyCommand::FullSpeed);

  CHECK(r.safe());
  CHECK(r.coverage.injected == 0);
  CHECK(r.coverage.dc() == doctest::Approx(1.0));
  CHECK(r.node_a.cycles > 0);
  CHECK(r.node_b.cycles == r.node_a.cycles);
  REQUIRE(r.latency_a.size() == 4);
  CHECK(r.latency_a[3].component == "t_stop");
  CHECK(r.latency_a[3].wcet_us == 34'960);
  CHECK_FALSE(r.trace_text.empty());
}

TEST_CASE("a single-channel run carries only node B") {
  RunSpec spec = baseline_spec();
  spec.dual = false;
  RunResult r = run_simulation(spec);
  REQUIRE(r.merged.size() >= 2);
  CHECK(r.merged[1].contributors == std::vector<NodeId>{NodeId::B});
  CHECK(r.node_a.cycles == 0);
  CHECK(r.latency_a.empty());
  CHECK(r.node_b.cycles > 0);
}

TEST_CASE("equal seeds reproduce a run byte for byte") {
  RunSpec spec = baseline_spec();
  spec.script = load_scenario(kConfigs / "scenarios" / "scenario2_occlusion.json");
  // Stochastic stage latencies make the trace genuinely seed-dependent.
  spec.runtime.node.stages =
      load_stage_profile(kConfigs / "profiles" / "scenario2_fitted.json");
  spec.seed = 99;
  spec.duration = sim::Duration{5'000'000};
  RunResult a = run_simulation(spec);
  RunResult b = run_simulation(spec);
  CHECK(a.trace_text == b.trace_text);
  CHECK(merged_csv(a.merged) == merged_csv(b.merged));

  spec.seed = 100;
  RunResult c = run_simulation(spec);
  CHECK(a.trace_text != c.trace_text);
}

TEST_CASE("run summaries publish the verdict and provenance") {
  RunSpec spec = baseline_spec();
  spec.faults.injections.push_back(harness::FaultInjection{
      NodeId::A, FaultKind::NpuHang, sim::VirtualTime{500'500}, 0.8, {}});
  spec.demand_period = sim::Duration{1'000'000};
  RunResult r = run_simulation(spec);

  auto j = nlohmann::json::parse(run_summary_json(r, 0xabcd1234u));
  CHECK(j["seed"] == 1);
  CHECK(j["config_fingerprint"] == "00000000abcd1234");
  CHECK(j["duration_ms"] == "2000.00");
  CHECK(j["safety"]["verdict"] == "SAFE");
  CHECK(j["coverage"]["injected"] == 1);
  CHECK(j["coverage"]["dc"] == doctest::Approx(1.0));
  REQUIRE(j["faults"].size() == 1);
  CHECK(j["faults"][0]["fault"] == "NpuHang");
  CHECK(j["faults"][0]["detected"].get<bool>());
  CHECK(j["faults"][0]["covered"].get<bool>());
  CHECK(j["faults"][0]["mechanism"] == "SW-Logic");
  // Local watchdog on a 2 ms grid: the hang at 500.5 ms is declared at
  // 504 ms, a 3.50 ms detection latency.
  CHECK(j["faults"][0]["t_det_ms"] == "3.50");
  CHECK(j["merged_rows"] == r.merged.size());
  CHECK(j["nodes"]["b"]["cycles"] == r.node_b.cycles);
}

TEST_CASE("report files land on disk, creating parent directories") {
  fs::path dir = fs::temp_directory_path() / "dmrsim-test-out" / "nested";
  fs::remove_all(dir.parent_path());
  write_file(dir / "a.csv", "x,y\n");
  std::string back = read_text_file(dir / "a.csv");
  CHECK(back == "x,y\n");
  fs::remove_all(dir.parent_path());
}
