#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace dirspace {

// Exact half-integer, stored as twice its value. Gromov products of integer
// graph metrics land on this grid, so metric quantities never touch floats.
struct HalfInt {
  std::int64_t twice = 0;

  static HalfInt whole(std::int64_t v) { return HalfInt{2 * v}; }
  static HalfInt halves(std::int64_t t) { return HalfInt{t}; }

  double value() const { return static_cast<double>(twice) / 2.0; }
  bool isWhole() const { return twice % 2 == 0; }

  HalfInt operator+(HalfInt o) const { return HalfInt{twice + o.twice}; }
  HalfInt operator-(HalfInt o) const { return HalfInt{twice - o.twice}; }
  auto operator<=>(const HalfInt&) const = default;

  std::string str() const {
    if (isWhole()) return std::to_string(twice / 2);
    return std::to_string(twice) + "/2";
  }
};

inline HalfInt maxHalf(HalfInt a, HalfInt b) { return a < b ? b : a; }
inline HalfInt minHalf(HalfInt a, HalfInt b) { return a < b ? a : b; }

}  // namespace dirspace
