#include "dmrsim/app/reports.hpp"

#include <cstdio>
#include <fstream>

#include <json.hpp>

namespace dmrsim::app {

namespace {

std::string fixed2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string contributors_text(const std::vector<NodeId>& c) {
  if (c.empty()) return "-";
  std::string s;
  for (NodeId id : c) s += to_string(id);
  return s;
}

}  // namespace

std::string merged_csv(const std::vector<redundancy::MergedRow>& rows) {
  std::string out = "time_us,command,contributors\n";
  for (const auto& r : rows) {
    out += std::to_string(r.time_us);
    out += ',';
    out += to_string(r.command);
    out += ',';
    out += contributors_text(r.contributors);
    out += '\n';
  }
  return out;
}

std::string faults_csv(const std::vector<harness::FaultRecord>& records) {
  std::string out = "fault,mechanism,t_det_ms,t_rec_ms\n";
  for (const auto& r : records) {
    out += to_string(r.injection.kind);
    out += ',';
    if (r.detected_by) out += to_string(*r.detected_by);
    out += ',';
    if (auto d = r.t_det()) out += sim::format_ms(*d);
    out += ',';
    if (auto d = r.t_rec()) out += sim::format_ms(*d);
    out += '\n';
  }
  return out;
}

std::string latency_csv_rows(const std::string& scenario,
                             const std::vector<profiler::LatencyStats>& stats) {
  std::string out;
  for (const auto& c : stats) {
    out += scenario;
    out += ',';
    out += c.component;
    out += ',';
    out += fixed2(c.average_ms());
    out += ',';
    out += sim::format_ms(c.wcet_us);
    out += ',';
    out += fixed2(c.std_dev_ms());
    out += ',';
    out += std::to_string(c.n);
    out += '\n';
  }
  return out;
}

std::string latency_csv(const std::string& scenario,
                        const std::vector<profiler::LatencyStats>& stats) {
  return "scenario,component,average_ms,wcet_ms,std_dev_ms,n\n" +
         latency_csv_rows(scenario, stats);
}

std::string latency_csv(const std::string& scenario, const profiler::ProfileResult& result) {
  return latency_csv(scenario, result.components);
}

std::string latency_json(const std::string& scenario, const profiler::ProfileResult& result) {
  nlohmann::json j;
  j["scenario"] = scenario;
  j["cycles"] = result.cycles;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& c : result.components)
    rows.push_back({{"component", c.component},
                    {"average_ms", c.average_ms()},
                    {"wcet_ms", c.wcet_ms()},
                    {"std_dev_ms", c.std_dev_ms()},
                    {"n", c.n}});
  j["components"] = std::move(rows);
  j["budget"] = {{"limit_ms", static_cast<double>(result.budget.budget_us) / 1000.0},
                 {"violations", result.budget.violations},
                 {"wcet_gap_ratio", result.budget.wcet_gap_ratio}};
  return j.dump(2) + "\n";
}

std::string latency_table(const std::string& scenario, const profiler::ProfileResult& result) {
  char line[160];
  std::string out = scenario + " latency profile (" + std::to_string(result.cycles) +
                    " cycles)\n";
  std::snprintf(line, sizeof(line), "%-10s %12s %10s %12s\n", "component", "average_ms",
                "wcet_ms", "std_dev_ms");
  out += line;
  for (const auto& c : result.components) {
    std::snprintf(line, sizeof(line), "%-10s %12.2f %10s %12.2f\n", c.component.c_str(),
                  c.average_ms(), sim::format_ms(c.wcet_us).c_str(), c.std_dev_ms());
    out += line;
  }
  std::snprintf(line, sizeof(line),
                "budget: t_stop <= %s ms, violations %llu, wcet gap ratio %.3f\n",
                sim::format_ms(result.budget.budget_us).c_str(),
                static_cast<unsigned long long>(result.budget.violations),
                result.budget.wcet_gap_ratio);
  out += line;
  return out;
}

std::string run_summary_json(const RunResult& result, std::uint64_t config_fingerprint) {
  nlohmann::json j;
  j["seed"] = result.seed;
  char fp[32];
  std::snprintf(fp, sizeof(fp), "%016llx",
                static_cast<unsigned long long>(config_fingerprint));
  j["config_fingerprint"] = fp;
  j["duration_ms"] = sim::format_ms(result.duration_us);
  j["merged_rows"] = result.merged.size();
  j["final_command"] =
      result.merged.empty() ? std::string("?")
                            : std::string(to_string(result.merged.back().command));

  nlohmann::json faults = nlohmann::json::array();
  for (const auto& e : result.coverage.entries) {
    nlohmann::json f;
    f["fault"] = std::string(to_string(e.record.injection.kind));
    f["target"] = std::string(to_string(e.record.injection.target));
    f["inject_at_ms"] = sim::format_ms(e.record.injection.inject_at.micros);
    f["detected"] = e.record.detected();
    if (e.record.detected_by) f["mechanism"] = std::string(to_string(*e.record.detected_by));
    if (auto d = e.record.t_det()) f["t_det_ms"] = sim::format_ms(*d);
    if (auto d = e.record.t_rec()) f["t_rec_ms"] = sim::format_ms(*d);
    f["covered"] = e.covered;
    faults.push_back(std::move(f));
  }
  j["faults"] = std::move(faults);
  j["coverage"] = {{"injected", result.coverage.injected},
                   {"covered", result.coverage.covered},
                   {"dc", result.coverage.dc()}};

  nlohmann::json violations = nlohmann::json::array();
  for (const auto& v : result.violations)
    violations.push_back({{"merged_row_time_us", v.merged_row_time_us},
                          {"stop_entry_ms", v.stop_entry_ms}});
  j["safety"] = {{"verdict", result.safe() ? "SAFE" : "UNSAFE"},
                 {"violations", std::move(violations)}};
  j["nodes"] = {{"a",
                 {{"cycles", result.node_a.cycles},
                  {"dropped_frames", result.node_a.dropped_frames}}},
                {"b",
                 {{"cycles", result.node_b.cycles},
                  {"dropped_frames", result.node_b.dropped_frames}}}};
  return j.dump(2) + "\n";
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw sim::ConfigError(path.string() + ": cannot write");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

}  // namespace dmrsim::app
