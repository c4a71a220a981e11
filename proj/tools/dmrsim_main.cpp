// dmrsim: compile safety rules, run redundant-pair simulations, profile
// pipeline latency and drive fault-injection campaigns.
//
// Exit codes:
//   0  success
//   1  rule document rejected (parse or dimension diagnostics)
//   2  rule compilation aborted: Safety Definition Inconsistent
//   3  IO or configuration error
//   4  safety violation observed during a run
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dmrsim/app/config_io.hpp"
#include "dmrsim/app/reports.hpp"
#include "dmrsim/app/world.hpp"
#include "dmrsim/profiler/profiler.hpp"
#include "dmrsim/rules/document.hpp"
#include "dmrsim/rules/predicate.hpp"

namespace fs = std::filesystem;
using namespace dmrsim;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDiagnostics = 1;
constexpr int kExitInconsistent = 2;
constexpr int kExitIoError = 3;
constexpr int kExitUnsafe = 4;

int cmd_compile(const std::string& rule_file, bool print_canonical) {
  std::string text;
  try {
    text = app::read_text_file(rule_file);
  } catch (const sim::ConfigError& e) {
    std::cerr << e.what() << "\n";
    return kExitIoError;
  }
  rules::ParseResult parsed = rules::parse_rules(text);
  if (!parsed.ok()) {
    for (const auto& d : parsed.diagnostics)
      std::cerr << rule_file << ":" << d.span.line << ":" << d.span.column << ": "
                << d.message << "\n";
    return kExitDiagnostics;
  }
  rules::CompileResult compiled = rules::compile_rules(*parsed.document);
  if (!compiled.ok()) {
    std::cerr << compiled.abort_message() << "\n";
    return kExitInconsistent;
  }
  if (print_canonical)
    std::cout << rules::print_rules(*parsed.document);
  else
    std::cout << compiled.predicate->to_json().dump(2) << "\n";
  return kExitOk;
}

struct RunArgs {
  std::string rules;
  std::string scenario;
  std::string runtime;
  std::string plan;
  std::string out;
  std::uint64_t seed = 1;
  double duration_ms = 60'000.0;
  double demand_period_ms = 0.0;
  bool single_node = false;
  bool write_trace = false;
};

app::RunSpec build_spec(const RunArgs& args, const harness::FaultPlan& plan) {
  app::RunSpec spec;
  spec.seed = args.seed;
  spec.duration = sim::duration_from_ms(args.duration_ms);
  spec.predicate = app::load_and_compile_rules(args.rules);
  spec.script = app::load_scenario(args.scenario);
  if (!args.runtime.empty()) spec.runtime = app::load_runtime(args.runtime);
  spec.faults = plan;
  spec.dual = !args.single_node;
  if (args.demand_period_ms > 0.0)
    spec.demand_period = sim::duration_from_ms(args.demand_period_ms);
  return spec;
}

std::uint64_t fingerprint_of(const RunArgs& args) {
  std::vector<std::string> texts;
  texts.push_back(app::read_text_file(args.rules));
  texts.push_back(app::read_text_file(args.scenario));
  if (!args.runtime.empty()) texts.push_back(app::read_text_file(args.runtime));
  if (!args.plan.empty()) texts.push_back(app::read_text_file(args.plan));
  return app::config_fingerprint(texts);
}

void write_run_artifacts(const RunArgs& args, const app::RunSpec& spec,
                         const app::RunResult& result) {
  if (args.out.empty()) return;
  fs::path out(args.out);
  app::write_file(out / "merged.csv", app::merged_csv(result.merged));
  if (!spec.faults.injections.empty())
    app::write_file(out / "faults.csv", app::faults_csv(result.fault_records));
  app::write_file(out / "latency.csv",
                  app::latency_csv(spec.script.name, result.latency_b) +
                      (spec.dual ? app::latency_csv_rows(spec.script.name + ".node-a",
                                                         result.latency_a)
                                 : std::string{}));
  app::write_file(out / "summary.json",
                  app::run_summary_json(result, fingerprint_of(args)));
  if (args.write_trace) app::write_file(out / "trace.txt", result.trace_text);
}

int report_verdict(const app::RunResult& result) {
  if (result.safe()) return kExitOk;
  for (const auto& v : result.violations) {
    std::fprintf(stderr,
                 "safety violation: merged output FullSpeed overlaps Stop Zone "
                 "(row at %s ms, stop entry %.3f ms)\n",
                 sim::format_ms(v.merged_row_time_us).c_str(), v.stop_entry_ms);
  }
  return kExitUnsafe;
}

int cmd_run(const RunArgs& args) {
  harness::FaultPlan plan;
  if (!args.plan.empty()) {
    auto [injections, single] = app::load_fault_injections(args.plan);
    plan.single_fault = single;
    plan.injections = std::move(injections);
  }
  app::RunSpec spec = build_spec(args, plan);
  app::RunResult result = app::run_simulation(spec);
  write_run_artifacts(args, spec, result);

  std::printf("run: seed=%llu duration_ms=%s merged_rows=%zu dc=%.3f verdict=%s\n",
              static_cast<unsigned long long>(result.seed),
              sim::format_ms(result.duration_us).c_str(), result.merged.size(),
              result.coverage.dc(), result.safe() ? "SAFE" : "UNSAFE");
  return report_verdict(result);
}

int cmd_faults(const RunArgs& args) {
  auto [injections, single] = app::load_fault_injections(args.plan);
  if (injections.empty()) {
    std::cerr << args.plan << ": campaign has no injections\n";
    return kExitIoError;
  }

  std::vector<harness::FaultRecord> records;
  harness::CoverageReport coverage;
  bool unsafe = false;
  int cell = 0;
  for (const auto& inj : injections) {
    harness::FaultPlan plan;
    plan.single_fault = single;
    plan.injections = {inj};
    app::RunSpec spec = build_spec(args, plan);
    app::RunResult result = app::run_simulation(spec);

    records.insert(records.end(), result.fault_records.begin(),
                   result.fault_records.end());
    coverage.injected += result.coverage.injected;
    coverage.covered += result.coverage.covered;
    for (auto& e : result.coverage.entries) coverage.entries.push_back(e);
    if (!result.safe()) {
      unsafe = true;
      report_verdict(result);
    }
    if (!args.out.empty()) {
      fs::path cell_dir = fs::path(args.out) /
                          ("fault-" + std::to_string(cell) + "-" +
                           std::string(to_string(inj.kind)));
      app::write_file(cell_dir / "merged.csv", app::merged_csv(result.merged));
      app::write_file(cell_dir / "summary.json",
                      app::run_summary_json(result, fingerprint_of(args)));
      if (args.write_trace)
        app::write_file(cell_dir / "trace.txt", result.trace_text);
    }
    ++cell;
  }

  std::string table = app::faults_csv(records);
  std::printf("%s", table.c_str());
  std::printf("coverage: injected=%llu covered=%llu dc=%.3f\n",
              static_cast<unsigned long long>(coverage.injected),
              static_cast<unsigned long long>(coverage.covered), coverage.dc());
  if (!args.out.empty()) {
    app::write_file(fs::path(args.out) / "faults.csv", table);
  }
  return unsafe ? kExitUnsafe : kExitOk;
}

struct ProfileArgs {
  std::string rules;
  std::string scenario;
  std::string profile;
  std::string configs = "configs";
  std::string out;
  std::string format = "table";
  std::uint64_t seed = 1;
  std::uint64_t cycles = 10'000;
};

int cmd_profile(const ProfileArgs& args) {
  fs::path scenario_path(args.scenario);
  if (args.scenario == "1" || args.scenario == "2" || args.scenario == "3") {
    const char* names[] = {"scenario1_baseline.json", "scenario2_occlusion.json",
                           "scenario3_multi.json"};
    scenario_path = fs::path(args.configs) / "scenarios" /
                    names[std::stoi(args.scenario) - 1];
  }
  rules::SafetyPredicate pred = app::load_and_compile_rules(args.rules);
  perception::ScenarioScript script = app::load_scenario(scenario_path);
  node::NodeConfig cfg;
  if (!args.profile.empty()) cfg.stages = app::load_stage_profile(args.profile);

  profiler::ProfileResult result =
      profiler::profile(args.seed, script, pred, cfg, args.cycles);

  if (args.format == "csv") {
    std::printf("%s", app::latency_csv(script.name, result).c_str());
  } else if (args.format == "json") {
    std::printf("%s", app::latency_json(script.name, result).c_str());
  } else {
    std::printf("%s", app::latency_table(script.name, result).c_str());
  }
  if (!args.out.empty()) {
    app::write_file(fs::path(args.out) / (script.name + "_latency.csv"),
                    app::latency_csv(script.name, result));
    app::write_file(fs::path(args.out) / (script.name + "_latency.json"),
                    app::latency_json(script.name, result));
  }
  return result.budget.within_budget() ? kExitOk : kExitUnsafe;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli("deterministic dual-modular-redundancy safety runtime simulator");
  cli.require_subcommand(1);

  std::string compile_file;
  bool compile_print = false;
  CLI::App* compile = cli.add_subcommand("compile", "compile a safety rule document");
  compile->add_option("file", compile_file, "rule document")->required();
  compile->add_flag("--print", compile_print, "print the canonical document instead of JSON");

  RunArgs run_args;
  CLI::App* run = cli.add_subcommand("run", "simulate the redundant pair on a scenario");
  run->add_option("--rules", run_args.rules, "rule document")->required();
  run->add_option("--scenario", run_args.scenario, "scenario file")->required();
  run->add_option("--runtime", run_args.runtime, "runtime config file");
  run->add_option("--faults", run_args.plan, "fault plan file");
  run->add_option("--seed", run_args.seed, "simulation seed");
  run->add_option("--duration-ms", run_args.duration_ms, "virtual run length");
  run->add_option("--demand-period-ms", run_args.demand_period_ms,
                  "periodic safety demand spacing (0 = scripted demands only)");
  run->add_option("--out", run_args.out, "output directory");
  run->add_flag("--single-node", run_args.single_node, "run node B alone");
  run->add_flag("--trace", run_args.write_trace, "also write the event trace");

  RunArgs faults_args;
  faults_args.demand_period_ms = 5000.0;
  CLI::App* faults = cli.add_subcommand("faults", "fault-injection campaign, one run per injection");
  faults->add_option("--rules", faults_args.rules, "rule document")->required();
  faults->add_option("--scenario", faults_args.scenario, "scenario file")->required();
  faults->add_option("--runtime", faults_args.runtime, "runtime config file");
  faults->add_option("--plan", faults_args.plan, "fault plan file")->required();
  faults->add_option("--seed", faults_args.seed, "simulation seed");
  faults->add_option("--duration-ms", faults_args.duration_ms, "virtual run length");
  faults->add_option("--demand-period-ms", faults_args.demand_period_ms,
                     "periodic safety demand spacing");
  faults->add_option("--out", faults_args.out, "output directory");
  faults->add_flag("--trace", faults_args.write_trace, "also write per-run event traces");

  ProfileArgs profile_args;
  CLI::App* profile = cli.add_subcommand("profile", "latency decomposition on one node");
  profile->add_option("--rules", profile_args.rules, "rule document")->required();
  profile->add_option("--scenario", profile_args.scenario,
                      "scenario file, or 1|2|3 for the bundled scenarios")
      ->required();
  profile->add_option("--profile", profile_args.profile,
                      "stage latency profile (default: constant stage times)");
  profile->add_option("--configs", profile_args.configs,
                      "config root for the 1|2|3 shorthand");
  profile->add_option("--cycles", profile_args.cycles, "pipeline cycles to run");
  profile->add_option("--seed", profile_args.seed, "simulation seed");
  profile->add_option("--format", profile_args.format, "table|csv|json")
      ->check(CLI::IsMember({"table", "csv", "json"}));
  profile->add_option("--out", profile_args.out, "output directory");

  CLI11_PARSE(cli, argc, argv);

  try {
    if (compile->parsed()) return cmd_compile(compile_file, compile_print);
    if (run->parsed()) return cmd_run(run_args);
    if (faults->parsed()) return cmd_faults(faults_args);
    if (profile->parsed()) return cmd_profile(profile_args);
  } catch (const sim::ConfigError& e) {
    std::cerr << e.what() << "\n";
    return kExitIoError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIoError;
  }
  return kExitOk;
}
