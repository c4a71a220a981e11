#include "dmrsim/redundancy/merge.hpp"

namespace dmrsim::redundancy {

MergedOutput merge(const std::vector<Contribution>& inputs, sim::VirtualTime now) {
  MergedOutput out;
  out.decided_at = now;
  bool any = false;
  SafetyCommand most = SafetyCommand::FullSpeed;
  for (const auto& c : inputs) {
    if (!c.status.healthy() || !c.latest) continue;
    out.contributors.push_back(c.node);
    if (!any || *c.latest > most) most = *c.latest;
    any = true;
  }
  out.command = any ? most : SafetyCommand::EmergencyStop;
  return out;
}

}  // namespace dmrsim::redundancy
