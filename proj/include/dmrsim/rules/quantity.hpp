#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dmrsim::rules {

/// Physical dimension as exponents over the (length, time) basis.
struct Dimension {
  int length = 0;
  int time = 0;

  friend bool operator==(Dimension, Dimension) = default;
  friend Dimension operator+(Dimension a, Dimension b) {
    return {a.length + b.length, a.time + b.time};
  }
  friend Dimension operator-(Dimension a, Dimension b) {
    return {a.length - b.length, a.time - b.time};
  }
};

inline constexpr Dimension kScalar{0, 0};
inline constexpr Dimension kLength{1, 0};
inline constexpr Dimension kTime{0, 1};
inline constexpr Dimension kSpeed{1, -1};

/// Human-readable dimension name for diagnostics ("length", "speed", ...).
std::string_view dimension_name(Dimension d);

struct DimensionError : std::logic_error {
  using std::logic_error::logic_error;
};

/// Dimensioned magnitude in fixed-point decimal: one unit equals 1e-6 of the
/// SI base combination (micrometres, microseconds, ...). Thresholds written
/// with up to six decimals are therefore represented exactly, and comparisons
/// at zone boundaries are stable in a way binary floating point cannot offer.
class Quantity {
 public:
  static constexpr std::int64_t kScale = 1'000'000;

  Quantity() = default;
  Quantity(std::int64_t micro, Dimension dim) : micro_(micro), dim_(dim) {}

  static Quantity scalar(std::int64_t micro) { return {micro, kScalar}; }
  static Quantity meters(double v);
  static Quantity seconds(double v);
  static Quantity meters_per_second(double v);

  std::int64_t micro() const { return micro_; }
  Dimension dim() const { return dim_; }
  /// Magnitude in base units, for display and for handover to the simulator.
  double value() const { return static_cast<double>(micro_) / kScale; }

  Quantity operator+(Quantity o) const;
  Quantity operator-(Quantity o) const;
  /// Dimensions add; the magnitude product is rescaled to micro resolution
  /// (exact whenever the true product has at most six decimals, rounded half
  /// away from zero otherwise).
  Quantity operator*(Quantity o) const;

  std::strong_ordering compare(Quantity o) const;
  friend bool operator==(Quantity a, Quantity b) {
    return a.compare(b) == std::strong_ordering::equal;
  }
  friend bool operator<(Quantity a, Quantity b) {
    return a.compare(b) == std::strong_ordering::less;
  }
  friend bool operator<=(Quantity a, Quantity b) { return !(b < a); }
  friend bool operator>(Quantity a, Quantity b) { return b < a; }
  friend bool operator>=(Quantity a, Quantity b) { return !(a < b); }

  /// Renders the magnitude as decimal text with trailing zeros trimmed.
  std::string magnitude_text() const;

 private:
  std::int64_t micro_ = 0;
  Dimension dim_ = kScalar;
};

/// Recognized unit spellings with their dimension and micro-scale factor.
struct UnitInfo {
  std::string_view spelling;
  Dimension dim;
  std::int64_t micro_per_unit;  // micro base units per one written unit
};

std::optional<UnitInfo> lookup_unit(std::string_view spelling);

/// Canonical unit spelling used when printing a dimension, if one exists.
std::optional<std::string_view> canonical_unit(Dimension d);

}  // namespace dmrsim::rules
