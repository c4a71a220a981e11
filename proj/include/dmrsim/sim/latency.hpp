#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "dmrsim/sim/rng.hpp"
#include "dmrsim/sim/time.hpp"

namespace dmrsim::sim {

/// Raised when a distribution (or any other config object) is constructed
/// with parameters that fail validation. Sampling itself never throws.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// One pipeline stage's latency model. Samples are whole microseconds.
class LatencyDistribution {
 public:
  enum class Kind { Constant, Uniform, TruncatedLognormal };

  static LatencyDistribution constant(Duration value);
  static LatencyDistribution uniform(Duration lo, Duration hi);

  /// Lognormal parametrized by its arithmetic mean and standard deviation,
  /// clamped to [min, max]. A draw outside the bounds lands on the bound, so
  /// observed maxima can never exceed max.
  static LatencyDistribution truncated_lognormal(Duration mean, Duration std_dev,
                                                 Duration min, Duration max);

  Duration sample(RngStream& rng) const;

  Kind kind() const { return kind_; }
  Duration truncation_max() const { return Duration{max_us_}; }
  double configured_mean_us() const;

 private:
  LatencyDistribution() = default;

  Kind kind_ = Kind::Constant;
  std::int64_t constant_us_ = 0;
  std::int64_t lo_us_ = 0;
  std::int64_t hi_us_ = 0;
  std::int64_t min_us_ = 0;
  std::int64_t max_us_ = 0;
  double mean_us_ = 0.0;
  double sd_us_ = 0.0;
  // Underlying normal parameters for the lognormal case.
  double mu_ = 0.0;
  double sigma_ = 0.0;
};

}  // namespace dmrsim::sim
