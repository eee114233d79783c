#include "dirspace/example_group.hpp"

#include <algorithm>
#include <set>
#include <vector>

namespace dirspace {

std::string ExampleElement::label() const {
  std::string s = "(";
  auto part = [](const std::map<long long, int>& f) {
    if (f.empty()) return std::string("0");
    std::string out;
    for (auto& [i, v] : f) {
      if (!out.empty()) out += "+";
      out += std::to_string(v) + "@" + std::to_string(i);
    }
    return out;
  };
  s += part(g0) + "|" + part(g1) + ",a^" + std::to_string(shift) + ")";
  return s;
}

ExampleGroup::ExampleGroup(int order) : order_(order) {
  if (order < 2) fail(Errc::OrderTooSmall, "the coefficient group needs order >= 2");
}

ExampleElement ExampleGroup::alphaPower(long long n) const {
  ExampleElement e;
  e.shift = n;
  return e;
}

std::map<long long, int> ExampleGroup::shiftSupport(const std::map<long long, int>& f,
                                                    long long by) {
  std::map<long long, int> out;
  for (auto& [i, v] : f) out.emplace(i + by, v);
  return out;
}

namespace {

void addInto(std::map<long long, int>& into, const std::map<long long, int>& other, int order) {
  for (auto& [i, v] : other) {
    const int sum = ((into.count(i) ? into[i] : 0) + v) % order;
    if (sum == 0)
      into.erase(i);
    else
      into[i] = sum;
  }
}

std::map<long long, int> negate(const std::map<long long, int>& f, int order) {
  std::map<long long, int> out;
  for (auto& [i, v] : f) out.emplace(i, (order - v) % order);
  return out;
}

}  // namespace

ExampleElement ExampleGroup::multiply(const ExampleElement& a, const ExampleElement& b) const {
  // (g, a^n)(g', a^m) = (g + alpha^n(g'), a^{n+m}); alpha^n shifts the first
  // coordinate's support down by n and the second coordinate's support up.
  ExampleElement out;
  out.g0 = a.g0;
  out.g1 = a.g1;
  addInto(out.g0, shiftSupport(b.g0, -a.shift), order_);
  addInto(out.g1, shiftSupport(b.g1, +a.shift), order_);
  out.shift = a.shift + b.shift;
  return out;
}

ExampleElement ExampleGroup::inverse(const ExampleElement& a) const {
  ExampleElement out;
  out.g0 = shiftSupport(negate(a.g0, order_), +a.shift);
  out.g1 = shiftSupport(negate(a.g1, order_), -a.shift);
  out.shift = -a.shift;
  return out;
}

ExampleElement ExampleGroup::power(const ExampleElement& a, long long k) const {
  if (k < 0) return power(inverse(a), -k);
  ExampleElement acc = identity();
  for (long long i = 0; i < k; ++i) acc = multiply(acc, a);
  return acc;
}

ExampleSubgroup ExampleGroup::conjugate(const ExampleElement& a, const ExampleSubgroup& u) const {
  // (g, a^n) U (g, a^n)^{-1} = alpha^n(U) because the base group is abelian.
  return ExampleSubgroup{u.n - a.shift, u.m + a.shift};
}

BigInt ExampleGroup::index(const ExampleSubgroup& u, const ExampleSubgroup& v) const {
  const long long e0 = std::max<long long>(0, u.n - v.n);
  const long long e1 = std::max<long long>(0, u.m - v.m);
  return bigPow(BigInt(order_), static_cast<unsigned>(e0 + e1));
}

bool ExampleGroup::includes(const ExampleSubgroup& u, const ExampleSubgroup& v) const {
  return v.n <= u.n && v.m <= u.m;
}

BigInt ExampleGroup::scale(const ExampleElement& a) const {
  return bigPow(BigInt(order_), static_cast<unsigned>(a.shift < 0 ? -a.shift : a.shift));
}

BigInt ExampleGroup::indexBruteForce(const ExampleSubgroup& u, const ExampleSubgroup& v,
                                     long long window) const {
  // Positions [-window, window] per coordinate. A coordinate position i is
  // free in U_{N,M} when i < cutoff; cosets of U cap V are counted by
  // zeroing the V-free positions of every U element.
  std::vector<std::pair<int, long long>> freeU;  // (coordinate, position)
  const auto collect = [&](int coord, long long cutoff) {
    for (long long i = -window; i <= window; ++i) {
      if (i < cutoff) freeU.emplace_back(coord, i);
    }
  };
  collect(0, u.n);
  collect(1, u.m);

  double total = 1;
  for (std::size_t i = 0; i < freeU.size(); ++i) total *= order_;
  if (total > 4e6) fail(Errc::DepthInfeasible, "brute-force window too large");

  const auto vAllows = [&](int coord, long long pos) {
    return pos < (coord == 0 ? v.n : v.m);
  };

  std::set<std::vector<int>> cosets;
  std::vector<int> digits(freeU.size(), 0);
  while (true) {
    std::vector<int> residue;
    residue.reserve(digits.size());
    for (std::size_t i = 0; i < digits.size(); ++i)
      residue.push_back(vAllows(freeU[i].first, freeU[i].second) ? 0 : digits[i]);
    cosets.insert(std::move(residue));

    std::size_t pos = 0;
    while (pos < digits.size()) {
      if (++digits[pos] < order_) break;
      digits[pos] = 0;
      ++pos;
    }
    if (pos == digits.size()) break;
    if (digits.empty()) break;
  }
  return BigInt(cosets.size());
}

}  // namespace dirspace
