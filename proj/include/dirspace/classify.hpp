#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dirspace/graph.hpp"
#include "dirspace/isometry.hpp"
#include "dirspace/profile.hpp"

namespace dirspace {

enum class IsometryKind { Elliptic, Hyperbolic, Undetermined };

const char* isometryKindName(IsometryKind k);

struct IsometryClass {
  IsometryKind kind = IsometryKind::Undetermined;
  // Elliptic: a vertex whose orbit closes into a cycle inside the horizon.
  // Hyperbolic: a vertex attaining the minimal displacement, with exact
  // linear growth d(v, g^k(v)) = k*len certified for k <= powerBound.
  std::optional<Vertex> witness;
  std::int64_t orbitDiameter = 0;   // elliptic certificate
  std::int64_t orbitPeriod = 0;     // elliptic certificate
  std::int64_t translationLength = 0;  // hyperbolic certificate
  std::string diagnostics;
};

struct TruncatedEnd {
  std::vector<Vertex> orbit;  // g^n(basepoint) for n = 1..N
  Vertex basepoint;
};

struct AxisWindow {
  std::vector<Vertex> vertices;    // positions -m..m; witness sits at index m
  std::int64_t center = 0;         // index of the witness vertex
  std::int64_t period = 0;         // per-step translation length
  std::int64_t power = 0;          // exponent n of the translating power g^n
  std::int64_t shift = 0;          // g^power moves index i to i + shift
};

// Spot-checks bijectivity and adjacency preservation on the horizon ball;
// throws InvalidIsometry on failure.
void validateIsometry(const Graph& g, const Isometry& iso, std::int64_t horizon);

IsometryClass classify(const Graph& g, const Isometry& iso, const TruncationProfile& profile);

// Minimal displacement of a certified hyperbolic isometry.
std::int64_t translationLength(const Graph& g, const Isometry& iso,
                               const TruncationProfile& profile);

TruncatedEnd attractingEnd(const Graph& g, const Isometry& iso, const TruncationProfile& profile);

// Finite proxy for equality of boundary points: pairwise Gromov products of
// the orbit tails all exceed the threshold.
bool sameEnd(const Graph& g, const TruncatedEnd& a, const TruncatedEnd& b, std::int64_t threshold);

// A window of the invariant geodesic. The smallest power with certified
// linear displacement growth translates the window by `shift` positions.
AxisWindow findAxis(const Graph& g, const Isometry& iso, const TruncationProfile& profile);

bool axisWindowInvariantsHold(const Graph& g, const Isometry& iso, const AxisWindow& window);

}  // namespace dirspace
