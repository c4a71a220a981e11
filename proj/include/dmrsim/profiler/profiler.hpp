#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dmrsim/node/config.hpp"
#include "dmrsim/node/messages.hpp"
#include "dmrsim/perception/scenario.hpp"
#include "dmrsim/rules/predicate.hpp"

namespace dmrsim::profiler {

/// Summary of one latency component over a profiling run. WCET here is the
/// observed maximum; std_dev is the population deviation.
struct LatencyStats {
  std::string component;
  std::uint64_t n = 0;
  std::int64_t wcet_us = 0;
  std::int64_t min_us = 0;
  double average_us = 0.0;
  double std_dev_us = 0.0;

  double average_ms() const { return average_us / 1000.0; }
  double wcet_ms() const { return static_cast<double>(wcet_us) / 1000.0; }
  double std_dev_ms() const { return std_dev_us / 1000.0; }
};

LatencyStats summarize(std::string component, const std::vector<std::int64_t>& samples_us);

/// Observed execution times against the compiled budget. `violations` counts
/// cycles strictly over the limit; the gap ratio measures how far the worst
/// case sits above the average, as a fraction of the average.
struct BudgetCheck {
  std::int64_t budget_us = 0;
  std::uint64_t violations = 0;
  double wcet_gap_ratio = 0.0;

  bool within_budget() const { return violations == 0; }
};

BudgetCheck check_budget(const std::vector<std::int64_t>& exec_us, sim::Duration budget);

struct ProfileResult {
  std::vector<LatencyStats> components;  // t_perc, t_infer, t_post, t_stop
  BudgetCheck budget;
  std::uint64_t cycles = 0;

  const LatencyStats& component(const std::string& name) const;
};

/// Runs a single node through `cycles` pipeline iterations on the given
/// scenario and reports the latency decomposition. Tracing stays off; only
/// the timing records matter here.
ProfileResult profile(std::uint64_t seed, const perception::ScenarioScript& script,
                      const rules::SafetyPredicate& pred, const node::NodeConfig& cfg,
                      std::uint64_t cycles);

}  // namespace dmrsim::profiler
