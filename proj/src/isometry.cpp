#include "dirspace/isometry.hpp"

namespace dirspace {

PermutationIso::PermutationIso(std::unordered_map<Vertex, Vertex> forward, std::string label)
    : forward_(std::move(forward)), label_(std::move(label)) {
  backward_.reserve(forward_.size());
  for (const auto& [from, to] : forward_) {
    if (!backward_.emplace(to, from).second)
      fail(Errc::InvariantViolation, "permutation is not injective at " + to.code);
  }
}

Vertex PermutationIso::apply(const Vertex& v) const {
  auto it = forward_.find(v);
  if (it == forward_.end())
    fail(Errc::InvalidIsometry, "vertex " + v.code + " missing from permutation");
  return it->second;
}

Vertex PermutationIso::applyInverse(const Vertex& v) const {
  auto it = backward_.find(v);
  if (it == backward_.end())
    fail(Errc::InvalidIsometry, "vertex " + v.code + " missing from permutation image");
  return it->second;
}

IsoPtr powerIso(IsoPtr base, std::int64_t k) {
  if (k == 0) return identityIso();
  if (k < 0) return powerIso(inverseOf(std::move(base)), -k);
  IsoPtr acc = base;
  for (std::int64_t i = 1; i < k; ++i) acc = composeIso(base, acc);
  return acc;
}

IsoPtr conjugateIso(IsoPtr h, IsoPtr g) {
  return composeIso(composeIso(h, std::move(g)), inverseOf(h));
}

Vertex applyPower(const Isometry& iso, std::int64_t k, const Vertex& v) {
  Vertex cur = v;
  if (k >= 0) {
    for (std::int64_t i = 0; i < k; ++i) cur = iso.apply(cur);
  } else {
    for (std::int64_t i = 0; i < -k; ++i) cur = iso.applyInverse(cur);
  }
  return cur;
}

}  // namespace dirspace
