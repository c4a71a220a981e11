#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace dmrsim::sim {

/// Deterministic random stream addressed by (seed, stream id).
///
/// The generator is std::mt19937_64, which the standard pins bit-for-bit, and
/// every distribution used in the simulator is derived here from raw 64-bit
/// draws. Standard-library distribution objects are deliberately avoided:
/// their output differs between libstdc++ and libc++, which would break the
/// requirement that equal (seed, id) pairs replay identical sequences on any
/// platform.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::string_view stream_id);

  std::uint64_t next_u64();

  /// Uniform on [0, 1) with 53 significant bits.
  double uniform01();

  /// Uniform on [lo, hi].
  double uniform(double lo, double hi);

  /// Gaussian draw via Box-Muller; consumes exactly two uniforms per call.
  double normal(double mean, double std_dev);

  /// True with probability p; consumes exactly one uniform.
  bool bernoulli(double p);

  static std::uint64_t derive_seed(std::uint64_t seed, std::string_view stream_id);

 private:
  std::mt19937_64 gen_;
};

}  // namespace dmrsim::sim
