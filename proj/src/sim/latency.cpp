#include "dmrsim/sim/latency.hpp"

#include <algorithm>
#include <cmath>

namespace dmrsim::sim {

LatencyDistribution LatencyDistribution::constant(Duration value) {
  if (value.count() < 0) throw ConfigError("constant latency must be >= 0");
  LatencyDistribution d;
  d.kind_ = Kind::Constant;
  d.constant_us_ = value.count();
  d.mean_us_ = static_cast<double>(value.count());
  d.max_us_ = value.count();
  return d;
}

LatencyDistribution LatencyDistribution::uniform(Duration lo, Duration hi) {
  if (lo.count() < 0 || lo > hi)
    throw ConfigError("uniform latency bounds must satisfy 0 <= lo <= hi");
  LatencyDistribution d;
  d.kind_ = Kind::Uniform;
  d.lo_us_ = lo.count();
  d.hi_us_ = hi.count();
  d.mean_us_ = 0.5 * static_cast<double>(lo.count() + hi.count());
  d.max_us_ = hi.count();
  return d;
}

LatencyDistribution LatencyDistribution::truncated_lognormal(Duration mean,
                                                             Duration std_dev,
                                                             Duration min,
                                                             Duration max) {
  if (mean.count() <= 0) throw ConfigError("lognormal mean must be > 0");
  if (std_dev.count() <= 0) throw ConfigError("lognormal std dev must be > 0");
  if (min.count() < 0 || min > max)
    throw ConfigError("truncation bounds must satisfy 0 <= min <= max");
  LatencyDistribution d;
  d.kind_ = Kind::TruncatedLognormal;
  d.mean_us_ = static_cast<double>(mean.count());
  d.sd_us_ = static_cast<double>(std_dev.count());
  d.min_us_ = min.count();
  d.max_us_ = max.count();
  double cv2 = (d.sd_us_ / d.mean_us_) * (d.sd_us_ / d.mean_us_);
  d.sigma_ = std::sqrt(std::log1p(cv2));
  d.mu_ = std::log(d.mean_us_) - 0.5 * d.sigma_ * d.sigma_;
  return d;
}

double LatencyDistribution::configured_mean_us() const { return mean_us_; }

Duration LatencyDistribution::sample(RngStream& rng) const {
  switch (kind_) {
    case Kind::Constant:
      return Duration{constant_us_};
    case Kind::Uniform: {
      double v = rng.uniform(static_cast<double>(lo_us_), static_cast<double>(hi_us_));
      return Duration{std::clamp<std::int64_t>(std::llround(v), lo_us_, hi_us_)};
    }
    case Kind::TruncatedLognormal: {
      double v = std::exp(rng.normal(mu_, sigma_));
      return Duration{std::clamp<std::int64_t>(std::llround(v), min_us_, max_us_)};
    }
  }
  return Duration{0};
}

}  // namespace dmrsim::sim
