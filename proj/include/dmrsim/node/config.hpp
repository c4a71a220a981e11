#pragma once

#include <optional>

#include "dmrsim/sim/latency.hpp"
#include "dmrsim/sim/time.hpp"
#include "dmrsim/types.hpp"

namespace dmrsim::node {

struct StageDistributions {
  sim::LatencyDistribution t_perc = sim::LatencyDistribution::constant(sim::Duration{7'500});
  sim::LatencyDistribution t_infer = sim::LatencyDistribution::constant(sim::Duration{25'050});
  sim::LatencyDistribution t_post = sim::LatencyDistribution::constant(sim::Duration{2'410});
};

struct NodeConfig {
  sim::Duration heartbeat_period{10'000};
  /// Execution-time ceiling for the cycle guard; defaults to the compiled
  /// stopping-time budget when unset.
  std::optional<sim::Duration> t_limit;
  double nominal_voltage = 5.0;
  StageDistributions stages;

  void validate() const {
    if (heartbeat_period.count() <= 0)
      throw sim::ConfigError("heartbeat_period must be > 0");
    if (t_limit && t_limit->count() <= 0)
      throw sim::ConfigError("t_limit must be > 0");
    if (nominal_voltage <= 0.0)
      throw sim::ConfigError("nominal_voltage must be > 0");
  }
};

/// Detection cadences and thresholds for the supervision machinery. The same
/// block configures a node's local watchdogs and the peer-facing monitor.
struct MonitoringConfig {
  sim::Duration heartbeat_timeout{50'000};
  sim::Duration heartbeat_check_period{10'000};
  sim::Duration staleness_threshold{2'000'000};
  sim::Duration staleness_check_period{15'000};
  sim::Duration inference_watchdog_period{2'000};
  sim::Duration adc_period{12'000};
  int adc_streak = 3;
  double brownout_fraction = 0.9;

  void validate() const {
    if (heartbeat_timeout.count() <= 0 || heartbeat_check_period.count() <= 0 ||
        staleness_threshold.count() <= 0 || staleness_check_period.count() <= 0 ||
        inference_watchdog_period.count() <= 0 || adc_period.count() <= 0)
      throw sim::ConfigError("monitoring periods and thresholds must be > 0");
    if (adc_streak < 1) throw sim::ConfigError("adc_streak must be >= 1");
    if (brownout_fraction <= 0.0 || brownout_fraction >= 1.0)
      throw sim::ConfigError("brownout_fraction must be within (0, 1)");
  }
};

/// How long repair takes once a fault of each kind has been detected.
/// Reboot-class faults sit near 40 s; watchdog-level restarts are sub-second.
struct RecoveryConfig {
  sim::Duration heartbeat_loss{39'627'630};
  sim::Duration npu_hang{313'610};
  sim::Duration power_brownout{39'546'520};
  sim::Duration sensor_fault{1'236'170};

  sim::Duration of(FaultKind k) const {
    switch (k) {
      case FaultKind::HeartbeatLoss: return heartbeat_loss;
      case FaultKind::NpuHang: return npu_hang;
      case FaultKind::PowerBrownout: return power_brownout;
      case FaultKind::SensorFault: return sensor_fault;
    }
    return sim::Duration{0};
  }

  void validate() const {
    if (heartbeat_loss.count() < 0 || npu_hang.count() < 0 ||
        power_brownout.count() < 0 || sensor_fault.count() < 0)
      throw sim::ConfigError("recovery durations must be >= 0");
  }
};

}  // namespace dmrsim::node
