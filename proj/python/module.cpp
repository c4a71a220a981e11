// Python bindings: rule compilation plus the two campaign entry points.
// Structured results cross the boundary as plain dicts built from the same
// JSON the CLI emits, so both frontends stay in lockstep.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dmrsim/app/config_io.hpp"
#include "dmrsim/app/reports.hpp"
#include "dmrsim/app/world.hpp"
#include "dmrsim/profiler/profiler.hpp"
#include "dmrsim/rules/document.hpp"
#include "dmrsim/rules/predicate.hpp"

namespace py = pybind11;
using namespace dmrsim;

namespace {

py::object json_to_py(const std::string& dumped) {
  return py::module_::import("json").attr("loads")(dumped);
}

rules::SafetyPredicate compile_text(const std::string& text) {
  rules::ParseResult parsed = rules::parse_rules(text);
  if (!parsed.ok()) {
    std::string msg = "rule document rejected";
    for (const auto& d : parsed.diagnostics)
      msg += "\n  line " + std::to_string(d.span.line) + ": " + d.message;
    throw py::value_error(msg);
  }
  rules::CompileResult compiled = rules::compile_rules(*parsed.document);
  if (!compiled.ok()) throw py::value_error(compiled.abort_message());
  return *compiled.predicate;
}

}  // namespace

PYBIND11_MODULE(_dmrsim, m) {
  m.doc() = "deterministic dual-modular-redundancy safety runtime simulator";

  py::class_<rules::SafetyPredicate>(m, "Predicate")
      .def_static("from_text", &compile_text, py::arg("text"))
      .def("evaluate", &rules::SafetyPredicate::evaluate_m_ms, py::arg("d_m"),
           py::arg("t_stop_ms"),
           "separation check: True when d_m is safe for the measured stop time")
      .def_property_readonly("threshold_m",
                             [](const rules::SafetyPredicate& p) {
                               return p.threshold().value();
                             })
      .def_property_readonly("d_min_m",
                             [](const rules::SafetyPredicate& p) {
                               return p.d_min.value();
                             })
      .def("to_dict", [](const rules::SafetyPredicate& p) {
        return json_to_py(p.to_json().dump());
      });

  m.def("compile_rules", [](const std::string& text) {
    return json_to_py(compile_text(text).to_json().dump());
  },
        py::arg("text"), "compile a rule document to its predicate dict");

  m.def(
      "run",
      [](const std::string& rules_file, const std::string& scenario_file,
         const std::string& runtime_file, const std::string& plan_file,
         std::uint64_t seed, double duration_ms, bool dual,
         double demand_period_ms) {
        app::RunSpec spec;
        spec.seed = seed;
        spec.duration = sim::duration_from_ms(duration_ms);
        spec.predicate = app::load_and_compile_rules(rules_file);
        spec.script = app::load_scenario(scenario_file);
        if (!runtime_file.empty()) spec.runtime = app::load_runtime(runtime_file);
        if (!plan_file.empty()) {
          auto [injections, single] = app::load_fault_injections(plan_file);
          spec.faults.single_fault = single;
          spec.faults.injections = std::move(injections);
        }
        spec.dual = dual;
        if (demand_period_ms > 0.0)
          spec.demand_period = sim::duration_from_ms(demand_period_ms);
        app::RunResult result = app::run_simulation(spec);

        std::vector<std::string> texts{app::read_text_file(rules_file),
                                       app::read_text_file(scenario_file)};
        if (!runtime_file.empty()) texts.push_back(app::read_text_file(runtime_file));
        if (!plan_file.empty()) texts.push_back(app::read_text_file(plan_file));
        return json_to_py(
            app::run_summary_json(result, app::config_fingerprint(texts)));
      },
      py::arg("rules"), py::arg("scenario"), py::arg("runtime") = std::string{},
      py::arg("faults") = std::string{}, py::arg("seed") = 1,
      py::arg("duration_ms") = 60'000.0, py::arg("dual") = true,
      py::arg("demand_period_ms") = 0.0,
      "simulate one run and return the summary dict");

  m.def(
      "profile",
      [](const std::string& rules_file, const std::string& scenario_file,
         const std::string& profile_file, std::uint64_t seed, std::uint64_t cycles) {
        rules::SafetyPredicate pred = app::load_and_compile_rules(rules_file);
        perception::ScenarioScript script = app::load_scenario(scenario_file);
        node::NodeConfig cfg;
        if (!profile_file.empty()) cfg.stages = app::load_stage_profile(profile_file);
        profiler::ProfileResult result =
            profiler::profile(seed, script, pred, cfg, cycles);
        return json_to_py(app::latency_json(script.name, result));
      },
      py::arg("rules"), py::arg("scenario"), py::arg("profile") = std::string{},
      py::arg("seed") = 1, py::arg("cycles") = 10'000,
      "latency decomposition of a single node over n cycles");
}
