#include "dmrsim/profiler/profiler.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dmrsim/node/node.hpp"
#include "dmrsim/sim/engine.hpp"

namespace dmrsim::profiler {

LatencyStats summarize(std::string component, const std::vector<std::int64_t>& samples_us) {
  LatencyStats stats;
  stats.component = std::move(component);
  stats.n = samples_us.size();
  if (samples_us.empty()) return stats;

  __int128 sum = 0;
  __int128 sum_sq = 0;
  stats.wcet_us = samples_us.front();
  stats.min_us = samples_us.front();
  for (std::int64_t s : samples_us) {
    sum += s;
    sum_sq += static_cast<__int128>(s) * s;
    stats.wcet_us = std::max(stats.wcet_us, s);
    stats.min_us = std::min(stats.min_us, s);
  }
  double n = static_cast<double>(stats.n);
  stats.average_us = static_cast<double>(sum) / n;
  double variance = static_cast<double>(sum_sq) / n - stats.average_us * stats.average_us;
  stats.std_dev_us = variance > 0.0 ? std::sqrt(variance) : 0.0;
  return stats;
}

BudgetCheck check_budget(const std::vector<std::int64_t>& exec_us, sim::Duration budget) {
  BudgetCheck check;
  check.budget_us = budget.count();
  if (exec_us.empty()) return check;

  __int128 sum = 0;
  std::int64_t wcet = exec_us.front();
  for (std::int64_t s : exec_us) {
    if (s > budget.count()) check.violations += 1;
    sum += s;
    wcet = std::max(wcet, s);
  }
  double avg = static_cast<double>(sum) / static_cast<double>(exec_us.size());
  if (avg > 0.0) check.wcet_gap_ratio = (static_cast<double>(wcet) - avg) / avg;
  return check;
}

const LatencyStats& ProfileResult::component(const std::string& name) const {
  for (const auto& c : components)
    if (c.component == name) return c;
  throw std::out_of_range("no such component: " + name);
}

ProfileResult profile(std::uint64_t seed, const perception::ScenarioScript& script,
                      const rules::SafetyPredicate& pred, const node::NodeConfig& cfg,
                      std::uint64_t cycles) {
  if (cycles == 0) throw sim::ConfigError("profile cycle count must be > 0");

  sim::Engine engine(seed);
  engine.set_tracing(false);
  node::Node node(engine, NodeId::A, cfg, node::MonitoringConfig{}, pred, script,
                  perception::Calibration{});
  node.set_cycle_limit(cycles);
  node.start();

  // Run in coarse slices until the cycle budget is exhausted. Each cycle is at
  // least one stage draw long, so progress is guaranteed.
  sim::Duration slice = sim::duration_from_ms(10'000.0);
  while (node.completed_cycles() < cycles)
    engine.run_until(engine.now() + slice);

  ProfileResult result;
  result.cycles = node.completed_cycles();

  std::vector<std::int64_t> perc, infer, post, exec;
  perc.reserve(cycles);
  infer.reserve(cycles);
  post.reserve(cycles);
  exec.reserve(cycles);
  for (const auto& t : node.timings()) {
    perc.push_back(t.t_perc.count());
    infer.push_back(t.t_infer.count());
    post.push_back(t.t_post.count());
    exec.push_back(t.t_stop.count());
  }
  result.components.push_back(summarize("t_perc", perc));
  result.components.push_back(summarize("t_infer", infer));
  result.components.push_back(summarize("t_post", post));
  result.components.push_back(summarize("t_stop", exec));
  result.budget = check_budget(exec, node.t_limit());
  return result;
}

}  // namespace dmrsim::profiler
