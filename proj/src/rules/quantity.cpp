#include "dmrsim/rules/quantity.hpp"

#include <array>
#include <cmath>

namespace dmrsim::rules {

namespace {

constexpr std::array<UnitInfo, 6> kUnits{{
    {"m", kLength, 1'000'000},
    {"cm", kLength, 10'000},
    {"mm", kLength, 1'000},
    {"s", kTime, 1'000'000},
    {"ms", kTime, 1'000},
    {"m/s", kSpeed, 1'000'000},
}};

void require_same_dim(Dimension a, Dimension b, const char* op) {
  if (!(a == b))
    throw DimensionError(std::string("dimension mismatch in ") + op + ": " +
                         std::string(dimension_name(a)) + " vs " +
                         std::string(dimension_name(b)));
}

}  // namespace

std::string_view dimension_name(Dimension d) {
  if (d == kScalar) return "scalar";
  if (d == kLength) return "length";
  if (d == kTime) return "time";
  if (d == kSpeed) return "speed";
  return "derived";
}

Quantity Quantity::meters(double v) {
  return {std::llround(v * kScale), kLength};
}
Quantity Quantity::seconds(double v) {
  return {std::llround(v * kScale), kTime};
}
Quantity Quantity::meters_per_second(double v) {
  return {std::llround(v * kScale), kSpeed};
}

Quantity Quantity::operator+(Quantity o) const {
  require_same_dim(dim_, o.dim_, "+");
  return {micro_ + o.micro_, dim_};
}

Quantity Quantity::operator-(Quantity o) const {
  require_same_dim(dim_, o.dim_, "-");
  return {micro_ - o.micro_, dim_};
}

Quantity Quantity::operator*(Quantity o) const {
  __int128 p = static_cast<__int128>(micro_) * o.micro_;
  __int128 half = kScale / 2;
  __int128 q = p >= 0 ? (p + half) / kScale : (p - half) / kScale;
  return {static_cast<std::int64_t>(q), dim_ + o.dim_};
}

std::strong_ordering Quantity::compare(Quantity o) const {
  require_same_dim(dim_, o.dim_, "compare");
  return micro_ <=> o.micro_;
}

std::string Quantity::magnitude_text() const {
  std::int64_t abs = micro_ < 0 ? -micro_ : micro_;
  std::string s = micro_ < 0 ? "-" : "";
  s += std::to_string(abs / kScale);
  std::int64_t frac = abs % kScale;
  if (frac != 0) {
    std::string f = std::to_string(frac);
    f.insert(0, 6 - f.size(), '0');
    while (f.back() == '0') f.pop_back();
    s += '.';
    s += f;
  }
  return s;
}

std::optional<UnitInfo> lookup_unit(std::string_view spelling) {
  for (const auto& u : kUnits)
    if (u.spelling == spelling) return u;
  return std::nullopt;
}

std::optional<std::string_view> canonical_unit(Dimension d) {
  if (d == kLength) return "m";
  if (d == kTime) return "s";
  if (d == kSpeed) return "m/s";
  return std::nullopt;
}

}  // namespace dmrsim::rules
