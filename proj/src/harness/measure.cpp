#include "dmrsim/harness/measure.hpp"

#include <string>

namespace dmrsim::harness {

namespace {

bool has_field(const std::string& summary, const std::string& field) {
  auto pos = summary.find(field);
  if (pos == std::string::npos) return false;
  auto end = pos + field.size();
  return end == summary.size() || summary[end] == ' ';
}

}  // namespace

FaultRecord measure(const sim::SimulationTrace& trace, const FaultInjection& inj) {
  FaultRecord record;
  record.injection = inj;
  const std::string node_field = "node=" + std::string(to_string(inj.target));
  const std::string kind_field = "kind=" + std::string(to_string(inj.kind));

  for (const auto& e : trace.entries()) {
    if (e.micros < inj.inject_at.micros) continue;
    if (!record.detected_at && e.summary.rfind("detect ", 0) == 0 &&
        has_field(e.summary, node_field) && has_field(e.summary, kind_field)) {
      record.detected_at = sim::VirtualTime{e.micros};
      record.detected_by = has_field(e.summary, "by=ADC-Probing")
                               ? Mechanism::AdcProbing
                               : Mechanism::SwLogic;
      continue;
    }
    if (record.detected_at && !record.recovered_at &&
        e.summary.rfind("recovered ", 0) == 0 && has_field(e.summary, node_field) &&
        has_field(e.summary, kind_field)) {
      record.recovered_at = sim::VirtualTime{e.micros};
      break;
    }
  }
  return record;
}

std::vector<FaultRecord> measure_all(const sim::SimulationTrace& trace,
                                     const FaultPlan& plan) {
  std::vector<FaultRecord> records;
  records.reserve(plan.injections.size());
  for (const auto& inj : plan.injections) records.push_back(measure(trace, inj));
  return records;
}

}  // namespace dmrsim::harness
