#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <string>

namespace dirspace {

// Arbitrary-precision integer used for all coset indices. Comparisons and
// metric axioms are decided on these exact values; logs are display-only.
using BigInt = boost::multiprecision::cpp_int;

inline BigInt bigPow(const BigInt& base, unsigned exp) {
  BigInt r = 1;
  BigInt b = base;
  while (exp) {
    if (exp & 1u) r *= b;
    b *= b;
    exp >>= 1u;
  }
  return r;
}

// Natural log of a positive BigInt, accurate enough for reporting even when
// the value overflows double.
inline double logBig(const BigInt& v) {
  if (v <= 0) return 0.0;
  if (v == 1) return 0.0;
  const unsigned bits = boost::multiprecision::msb(v);
  if (bits <= 900) {
    return std::log(v.convert_to<double>());
  }
  const unsigned shift = bits - 64;
  const double mant = (v >> shift).convert_to<double>();
  return std::log(mant) + static_cast<double>(shift) * std::log(2.0);
}

inline std::string decimal(const BigInt& v) { return v.str(); }

}  // namespace dirspace
