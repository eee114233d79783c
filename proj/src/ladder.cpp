#include "dirspace/ladder.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>

namespace dirspace {

namespace {

// Codes like "+0012:0" keep the lexicographic order aligned with the
// geometric order along the rails, which makes tie-breaks easy to predict.
std::string fmtCoord(std::int64_t x) {
  char buf[16];
  if (x >= 0)
    std::snprintf(buf, sizeof buf, "+%05lld", static_cast<long long>(x));
  else
    std::snprintf(buf, sizeof buf, "-%05lld", static_cast<long long>(-x));
  return buf;
}

}  // namespace

Vertex LadderGraph::encode(std::int64_t x, int rail) {
  return Vertex{fmtCoord(x) + ":" + std::to_string(rail)};
}

std::pair<std::int64_t, int> LadderGraph::decode(const Vertex& v) {
  const auto colon = v.code.find(':');
  if (colon == std::string::npos || colon + 2 != v.code.size())
    fail(Errc::InvariantViolation, "bad ladder code " + v.code);
  const std::int64_t mag = std::atoll(v.code.substr(1, colon - 1).c_str());
  const std::int64_t x = v.code[0] == '-' ? -mag : mag;
  const int rail = v.code[colon + 1] - '0';
  if (rail != 0 && rail != 1) fail(Errc::InvariantViolation, "bad ladder rail in " + v.code);
  return {x, rail};
}

std::vector<Vertex> LadderGraph::neighbors(const Vertex& v) const {
  const auto [x, rail] = decode(v);
  std::vector<Vertex> out = {encode(x - 1, rail), encode(x + 1, rail), encode(x, 1 - rail)};
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<std::int64_t> LadderGraph::distanceHint(const Vertex& u, const Vertex& v) const {
  const auto [ux, ur] = decode(u);
  const auto [vx, vr] = decode(v);
  return std::abs(ux - vx) + (ur == vr ? 0 : 1);
}

namespace {

class LadderShiftIso final : public Isometry {
 public:
  LadderShiftIso(std::int64_t dx, bool swap) : dx_(dx), swap_(swap) {}
  Vertex apply(const Vertex& v) const override {
    const auto [x, r] = LadderGraph::decode(v);
    return LadderGraph::encode(x + dx_, swap_ ? 1 - r : r);
  }
  Vertex applyInverse(const Vertex& v) const override {
    const auto [x, r] = LadderGraph::decode(v);
    return LadderGraph::encode(x - dx_, swap_ ? 1 - r : r);
  }
  std::string label() const override {
    return (swap_ ? "glide:" : "shift:") + std::to_string(dx_);
  }

 private:
  std::int64_t dx_;
  bool swap_;
};

class LadderReflectIso final : public Isometry {
 public:
  Vertex apply(const Vertex& v) const override {
    const auto [x, r] = LadderGraph::decode(v);
    return LadderGraph::encode(-x, r);
  }
  Vertex applyInverse(const Vertex& v) const override { return apply(v); }
  std::string label() const override { return "reflect"; }
};

}  // namespace

IsoPtr ladderShift(std::int64_t dx, bool swapRails) {
  return std::make_shared<LadderShiftIso>(dx, swapRails);
}

IsoPtr ladderReflection() { return std::make_shared<LadderReflectIso>(); }

}  // namespace dirspace
