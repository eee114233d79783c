#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "dirspace/bigint.hpp"
#include "dirspace/errors.hpp"

namespace dirspace {

// Element of (G0 x G1) . <alpha>, where G0, G1 are restricted products of a
// cyclic group F over Z and alpha shifts the two coordinates in opposite
// directions. Elements are pairs: a finitely supported (g0, g1) part plus a
// shift exponent.
struct ExampleElement {
  std::map<long long, int> g0;  // nonzero entries only, values in 1..order-1
  std::map<long long, int> g1;
  long long shift = 0;

  bool operator==(const ExampleElement&) const = default;
  std::string label() const;
};

// Compact open subgroup U_N x U_M: entries vanish at indices >= N (first
// coordinate) and >= M (second coordinate).
struct ExampleSubgroup {
  long long n = 0;
  long long m = 0;

  bool operator==(const ExampleSubgroup&) const = default;
};

class ExampleGroup {
 public:
  explicit ExampleGroup(int order);

  int order() const { return order_; }

  ExampleElement identity() const { return {}; }
  ExampleElement alphaPower(long long n) const;
  ExampleElement multiply(const ExampleElement& a, const ExampleElement& b) const;
  ExampleElement inverse(const ExampleElement& a) const;
  ExampleElement power(const ExampleElement& a, long long k) const;

  // Image of the support pair under alpha^n.
  static std::map<long long, int> shiftSupport(const std::map<long long, int>& f, long long by);

  // Conjugation of U_{N,M} by an element: depends only on the shift part.
  ExampleSubgroup conjugate(const ExampleElement& a, const ExampleSubgroup& u) const;

  // [U : U cap V] = order^(max(0, N-N') + max(0, M-M')).
  BigInt index(const ExampleSubgroup& u, const ExampleSubgroup& v) const;
  bool includes(const ExampleSubgroup& u, const ExampleSubgroup& v) const;  // u >= v

  BigInt scale(const ExampleElement& a) const;  // order^|shift|

  // Independent oracle: counts cosets by enumerating the subgroup inside the
  // coordinate window [-window, window]. Throws DepthInfeasible when the
  // enumeration would exceed ~4M elements.
  BigInt indexBruteForce(const ExampleSubgroup& u, const ExampleSubgroup& v, long long window) const;

 private:
  int order_;
};

}  // namespace dirspace
