#pragma once

#include <chrono>
#include <cmath>
#include <compare>
#include <cstdint>
#include <string>

namespace dmrsim::sim {

/// All simulation arithmetic happens on whole microseconds.
using Duration = std::chrono::microseconds;

/// Absolute instant on the virtual timeline. Distinct from Duration so that
/// "time + time" does not typecheck.
struct VirtualTime {
  std::int64_t micros = 0;

  friend auto operator<=>(VirtualTime, VirtualTime) = default;

  friend VirtualTime operator+(VirtualTime t, Duration d) {
    return VirtualTime{t.micros + d.count()};
  }
  friend VirtualTime operator-(VirtualTime t, Duration d) {
    return VirtualTime{t.micros - d.count()};
  }
  friend Duration operator-(VirtualTime a, VirtualTime b) {
    return Duration{a.micros - b.micros};
  }
};

inline constexpr VirtualTime kTimeZero{0};

/// Rounds a millisecond value to the nearest whole microsecond.
inline Duration duration_from_ms(double ms) {
  return Duration{std::llround(ms * 1000.0)};
}

inline VirtualTime time_from_ms(double ms) {
  return VirtualTime{std::llround(ms * 1000.0)};
}

inline double to_ms(Duration d) { return static_cast<double>(d.count()) / 1000.0; }
inline double to_ms(VirtualTime t) { return static_cast<double>(t.micros) / 1000.0; }

/// Fixed two-decimal millisecond rendering done in integer arithmetic so the
/// same microsecond count always produces the same bytes.
std::string format_ms(std::int64_t micros);
inline std::string format_ms(Duration d) { return format_ms(d.count()); }

}  // namespace dmrsim::sim
