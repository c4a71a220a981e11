#pragma once

#include <functional>

#include "dmrsim/harness/plan.hpp"
#include "dmrsim/node/node.hpp"
#include "dmrsim/redundancy/arbiter.hpp"
#include "dmrsim/sim/engine.hpp"

namespace dmrsim::harness {

/// Schedules the plan's injections and applies each manifestation to the
/// target node at fire time. Transient faults get a matching clear event.
class Injector {
 public:
  Injector(sim::Engine& engine, const FaultPlan& plan,
           std::function<node::Node*(NodeId)> node_of,
           const redundancy::Arbiter& arbiter);

  void arm();

 private:
  void fire(const FaultInjection& inj);
  void clear(const FaultInjection& inj);

  sim::Engine& engine_;
  FaultPlan plan_;
  std::function<node::Node*(NodeId)> node_of_;
  const redundancy::Arbiter& arbiter_;
};

}  // namespace dmrsim::harness
