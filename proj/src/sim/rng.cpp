#include "dmrsim/sim/rng.hpp"

#include <cmath>
#include <numbers>

namespace dmrsim::sim {

namespace {

std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t RngStream::derive_seed(std::uint64_t seed, std::string_view stream_id) {
  return splitmix64(seed ^ fnv1a64(stream_id));
}

RngStream::RngStream(std::uint64_t seed, std::string_view stream_id)
    : gen_(derive_seed(seed, stream_id)) {}

std::uint64_t RngStream::next_u64() { return gen_(); }

double RngStream::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform(double lo, double hi) {
  return lo + uniform01() * (hi - lo);
}

double RngStream::normal(double mean, double std_dev) {
  double u1 = uniform01();
  double u2 = uniform01();
  if (u1 <= 0.0) u1 = 0x1.0p-53;  // keep log() finite
  double r = std::sqrt(-2.0 * std::log(u1));
  return mean + std_dev * r * std::cos(2.0 * std::numbers::pi * u2);
}

bool RngStream::bernoulli(double p) { return uniform01() < p; }

}  // namespace dmrsim::sim
