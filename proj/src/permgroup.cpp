#include "dirspace/permgroup.hpp"

#include <algorithm>
#include <set>

namespace dirspace {

Perm identityPerm(int degree) {
  Perm p(static_cast<std::size_t>(degree));
  for (int i = 0; i < degree; ++i) p[static_cast<std::size_t>(i)] = i;
  return p;
}

Perm composePerm(const Perm& outer, const Perm& inner) {
  Perm out(inner.size());
  for (std::size_t i = 0; i < inner.size(); ++i)
    out[i] = outer[static_cast<std::size_t>(inner[i])];
  return out;
}

Perm inversePerm(const Perm& p) {
  Perm out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[static_cast<std::size_t>(p[i])] = static_cast<int>(i);
  return out;
}

bool isPerm(const Perm& p) {
  std::vector<bool> seen(p.size(), false);
  for (int v : p) {
    if (v < 0 || static_cast<std::size_t>(v) >= p.size() || seen[static_cast<std::size_t>(v)])
      return false;
    seen[static_cast<std::size_t>(v)] = true;
  }
  return true;
}

std::string permCode(const Perm& p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s.push_back('.');
    s += std::to_string(p[i]);
  }
  return s;
}

std::vector<Perm> permClosure(const std::vector<Perm>& gens, int degree, std::size_t cap) {
  for (const Perm& g : gens) {
    if (static_cast<int>(g.size()) != degree || !isPerm(g))
      fail(Errc::ParseError, "generator is not a permutation of the stated degree");
  }
  std::set<Perm> closed;
  std::vector<Perm> frontier;
  closed.insert(identityPerm(degree));
  frontier.push_back(identityPerm(degree));
  while (!frontier.empty()) {
    std::vector<Perm> next;
    for (const Perm& p : frontier) {
      for (const Perm& g : gens) {
        Perm q = composePerm(g, p);
        if (closed.insert(q).second) {
          if (closed.size() > cap) fail(Errc::DepthInfeasible, "permutation closure too large");
          next.push_back(std::move(q));
        }
      }
    }
    frontier = std::move(next);
  }
  return std::vector<Perm>(closed.begin(), closed.end());
}

}  // namespace dirspace
