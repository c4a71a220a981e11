#include "dmrsim/app/config_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "dmrsim/rules/document.hpp"

namespace dmrsim::app {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::filesystem::path& file, const std::string& what) {
  throw sim::ConfigError(file.string() + ": " + what);
}

json load_json(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) fail(file, "cannot open");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    fail(file, e.what());
  }
  return j;
}

sim::Duration ms_field(const json& j, const char* key, double fallback) {
  return sim::duration_from_ms(j.value(key, fallback));
}

}  // namespace

std::string read_text_file(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw sim::ConfigError(file.string() + ": cannot open");
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

perception::ScenarioScript load_scenario(const std::filesystem::path& file) {
  json j = load_json(file);
  perception::ScenarioScript script;
  try {
    script.name = j.value("name", file.stem().string());
    script.kind = perception::scenario_kind_from_string(j.value("kind", "baseline"));
    script.frame_period = ms_field(j, "frame_period_ms", 20.0);
    script.detection_noise_m = j.value("detection_noise_m", 0.0);
    script.miss_rate = j.value("miss_rate", 0.0);
    for (const auto& actor : j.at("actors")) {
      perception::ActorTrack track;
      track.bearing_rad = actor.value("bearing_deg", 0.0) * M_PI / 180.0;
      for (const auto& wp : actor.at("waypoints")) {
        track.waypoints.push_back(perception::ActorTrack::Waypoint{
            sim::duration_from_ms(wp.at("t_ms").get<double>()).count(),
            wp.at("distance_m").get<double>()});
      }
      script.actors.push_back(std::move(track));
    }
  } catch (const json::exception& e) {
    fail(file, e.what());
  }
  try {
    script.validate();
  } catch (const sim::ConfigError& e) {
    fail(file, e.what());
  }
  return script;
}

sim::LatencyDistribution distribution_from_json(const json& j, const std::string& context) {
  std::string type = j.value("type", "constant");
  if (type == "constant")
    return sim::LatencyDistribution::constant(
        sim::duration_from_ms(j.at("value_ms").get<double>()));
  if (type == "uniform")
    return sim::LatencyDistribution::uniform(
        sim::duration_from_ms(j.at("min_ms").get<double>()),
        sim::duration_from_ms(j.at("max_ms").get<double>()));
  if (type == "truncated_lognormal")
    return sim::LatencyDistribution::truncated_lognormal(
        sim::duration_from_ms(j.at("mean_ms").get<double>()),
        sim::duration_from_ms(j.at("std_dev_ms").get<double>()),
        sim::duration_from_ms(j.value("min_ms", 0.0)),
        sim::duration_from_ms(j.at("max_ms").get<double>()));
  throw sim::ConfigError(context + ": unknown distribution type '" + type + "'");
}

node::StageDistributions load_stage_profile(const std::filesystem::path& file) {
  json j = load_json(file);
  node::StageDistributions stages;
  try {
    stages.t_perc = distribution_from_json(j.at("t_perc"), file.string() + ":t_perc");
    stages.t_infer = distribution_from_json(j.at("t_infer"), file.string() + ":t_infer");
    stages.t_post = distribution_from_json(j.at("t_post"), file.string() + ":t_post");
  } catch (const json::exception& e) {
    fail(file, e.what());
  }
  return stages;
}

RuntimeConfig load_runtime(const std::filesystem::path& file) {
  json j = load_json(file);
  RuntimeConfig cfg;
  try {
    if (j.contains("node")) {
      const json& n = j["node"];
      cfg.node.heartbeat_period = ms_field(n, "heartbeat_period_ms", 10.0);
      if (n.contains("t_limit_ms"))
        cfg.node.t_limit = sim::duration_from_ms(n["t_limit_ms"].get<double>());
      cfg.node.nominal_voltage = n.value("nominal_voltage", 5.0);
      if (n.contains("stages"))
        cfg.node.stages = node::StageDistributions{
            distribution_from_json(n["stages"].at("t_perc"), file.string()),
            distribution_from_json(n["stages"].at("t_infer"), file.string()),
            distribution_from_json(n["stages"].at("t_post"), file.string())};
    }
    if (j.contains("monitoring")) {
      const json& m = j["monitoring"];
      cfg.monitoring.heartbeat_timeout = ms_field(m, "heartbeat_timeout_ms", 50.0);
      cfg.monitoring.heartbeat_check_period = ms_field(m, "heartbeat_check_period_ms", 10.0);
      cfg.monitoring.staleness_threshold = ms_field(m, "staleness_threshold_ms", 2000.0);
      cfg.monitoring.staleness_check_period = ms_field(m, "staleness_check_period_ms", 15.0);
      cfg.monitoring.inference_watchdog_period =
          ms_field(m, "inference_watchdog_period_ms", 2.0);
      cfg.monitoring.adc_period = ms_field(m, "adc_period_ms", 12.0);
      cfg.monitoring.adc_streak = m.value("adc_streak", 3);
      cfg.monitoring.brownout_fraction = m.value("brownout_fraction", 0.9);
    }
    if (j.contains("recovery")) {
      const json& r = j["recovery"];
      cfg.recovery.heartbeat_loss = ms_field(r, "heartbeat_loss_ms", 39627.63);
      cfg.recovery.npu_hang = ms_field(r, "npu_hang_ms", 313.61);
      cfg.recovery.power_brownout = ms_field(r, "power_brownout_ms", 39546.52);
      cfg.recovery.sensor_fault = ms_field(r, "sensor_fault_ms", 1236.17);
    }
    if (j.contains("channels")) {
      const json& c = j["channels"];
      cfg.heartbeat_latency = ms_field(c, "heartbeat_latency_ms", 0.0);
      cfg.command_latency = ms_field(c, "command_latency_ms", 0.0);
      cfg.report_latency = ms_field(c, "report_latency_ms", 0.0);
    }
  } catch (const json::exception& e) {
    fail(file, e.what());
  }
  try {
    cfg.validate();
  } catch (const sim::ConfigError& e) {
    fail(file, e.what());
  }
  return cfg;
}

std::pair<std::vector<harness::FaultInjection>, bool> load_fault_injections(
    const std::filesystem::path& file) {
  json j = load_json(file);
  std::vector<harness::FaultInjection> injections;
  bool single_fault = true;
  try {
    single_fault = j.value("single_fault", true);
    for (const auto& inj : j.at("injections")) {
      harness::FaultInjection f;
      f.target = node_id_from_string(inj.value("target", "A"));
      f.kind = fault_kind_from_string(inj.at("kind").get<std::string>());
      f.inject_at = sim::time_from_ms(inj.at("inject_at_ms").get<double>());
      f.brownout_depth = inj.value("brownout_depth", 0.8);
      if (inj.contains("duration_ms"))
        f.duration = sim::duration_from_ms(inj["duration_ms"].get<double>());
      injections.push_back(f);
    }
  } catch (const json::exception& e) {
    fail(file, e.what());
  } catch (const std::invalid_argument& e) {
    fail(file, e.what());
  }
  return {std::move(injections), single_fault};
}

rules::SafetyPredicate load_and_compile_rules(const std::filesystem::path& file) {
  rules::ParseResult parsed = rules::parse_rules(read_text_file(file));
  if (!parsed.ok()) {
    std::string msg = file.string() + ": rule document rejected";
    for (const auto& d : parsed.diagnostics) {
      msg += "\n  line " + std::to_string(d.span.line) + ": " + d.message;
    }
    throw sim::ConfigError(msg);
  }
  rules::CompileResult compiled = rules::compile_rules(*parsed.document);
  if (!compiled.ok()) throw sim::ConfigError(compiled.abort_message());
  return *compiled.predicate;
}

std::uint64_t config_fingerprint(const std::vector<std::string>& texts) {
  // FNV-1a over the concatenated texts with length framing, so swapping
  // boundary bytes between adjacent inputs changes the digest.
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](const void* data, std::size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
      h ^= p[i];
      h *= 1099511628211ull;
    }
  };
  for (const auto& t : texts) {
    std::uint64_t len = t.size();
    mix(&len, sizeof(len));
    mix(t.data(), t.size());
  }
  return h;
}

}  // namespace dmrsim::app
