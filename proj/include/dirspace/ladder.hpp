#pragma once

#include <cstdint>
#include <string>

#include "dirspace/graph.hpp"
#include "dirspace/isometry.hpp"

namespace dirspace {

// Bi-infinite ladder: rails Z x {0,1} plus a rung at every position. A
// finite-width hyperbolic instance whose shift has two parallel invariant
// geodesics, which exercises the multi-candidate axis machinery.
class LadderGraph final : public Graph {
 public:
  Vertex basepoint() const override { return encode(0, 0); }
  std::vector<Vertex> neighbors(const Vertex& v) const override;
  std::optional<std::int64_t> distanceHint(const Vertex& u, const Vertex& v) const override;
  std::string describe() const override { return "bi-infinite ladder"; }

  static Vertex encode(std::int64_t x, int rail);
  static std::pair<std::int64_t, int> decode(const Vertex& v);
};

// (x, r) -> (x + dx, r xor swap). swap=false gives a clean translation;
// swap=true is a glide whose square is the translation by 2*dx.
IsoPtr ladderShift(std::int64_t dx, bool swapRails);

// (x, r) -> (-x, r): elliptic reflection through the rung at 0.
IsoPtr ladderReflection();

}  // namespace dirspace
