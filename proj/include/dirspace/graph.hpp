#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dirspace/errors.hpp"
#include "dirspace/halfint.hpp"

namespace dirspace {

// Canonical vertex identifier. Codes are stable across runs for the same
// instance; equality and the total order are on the code alone.
struct Vertex {
  std::string code;

  bool operator==(const Vertex&) const = default;
  auto operator<=>(const Vertex&) const = default;
};

// Locally finite graph with deterministic neighbor enumeration. Instances
// are immutable after construction and safe for concurrent reads; every
// operation below is a pure function of its inputs.
class Graph {
 public:
  virtual ~Graph() = default;

  virtual Vertex basepoint() const = 0;
  virtual std::vector<Vertex> neighbors(const Vertex& v) const = 0;

  // Exact metric shortcut for graphs with a closed form (trees, ladders).
  // nullopt means "use breadth-first search".
  virtual std::optional<std::int64_t> distanceHint(const Vertex& u, const Vertex& v) const {
    (void)u;
    (void)v;
    return std::nullopt;
  }

  virtual bool isFinite() const { return false; }
  virtual std::string describe() const = 0;
};

struct GeodesicPath {
  std::vector<Vertex> vertices;

  std::int64_t length() const { return static_cast<std::int64_t>(vertices.size()) - 1; }
  const Vertex& front() const { return vertices.front(); }
  const Vertex& back() const { return vertices.back(); }
};

struct HyperbolicityReport {
  HalfInt deltaSlim;
  HalfInt deltaFourPoint;
  std::string sampleSpec;
  std::size_t quadruplesScanned = 0;
  std::size_t trianglesScanned = 0;
  bool quadruplesExhaustive = true;
  bool trianglesExhaustive = true;
};

struct HyperbolicityOptions {
  std::size_t maxQuadruples = 200000;
  std::size_t maxTriangles = 2000;
  std::uint64_t seed = 0;
  std::int64_t horizon = 1 << 20;
};

inline constexpr std::int64_t kUnboundedHorizon = INT64_C(1) << 40;

bool adjacent(const Graph& g, const Vertex& u, const Vertex& v);

// Graph metric via BFS, bounded by `horizon`. Throws Unreachable when no
// path of length <= horizon exists (disconnected or truncated input).
std::int64_t distance(const Graph& g, const Vertex& u, const Vertex& v,
                      std::int64_t horizon = kUnboundedHorizon);

// The lexicographically minimal geodesic from u to v: at each step the
// smallest-code neighbor that still decreases the remaining distance.
GeodesicPath geodesic(const Graph& g, const Vertex& u, const Vertex& v,
                      std::int64_t horizon = kUnboundedHorizon);

bool isGeodesic(const Graph& g, const GeodesicPath& p, std::int64_t horizon = kUnboundedHorizon);

HalfInt gromovProduct(const Graph& g, const Vertex& x, const Vertex& y, const Vertex& p,
                      std::int64_t horizon = kUnboundedHorizon);

// Vertices within `radius` of `center`, sorted by (distance, code).
std::vector<Vertex> ballVertices(const Graph& g, const Vertex& center, std::int64_t radius);

// Exact maxima of the four-point defect and the slim-triangle constant over
// the scanned quadruples/triangles. When the full scan exceeds the option
// budget a seeded uniform subsample is scanned instead; the report says so.
HyperbolicityReport estimateHyperbolicity(const Graph& g, const std::vector<Vertex>& sample,
                                          const HyperbolicityOptions& opts = {});

// d(p,gamma) - 2*delta <= (x|y)_p <= d(p,gamma) for the tie-broken geodesic.
bool checkStandardEstimate(const Graph& g, const Vertex& p, const Vertex& x, const Vertex& y,
                           HalfInt delta, std::int64_t horizon = kUnboundedHorizon);

// Every vertex of g0 within 8*delta + 2*d(starts) + 2*d(ends) of g1.
bool checkRibbon(const Graph& g, const GeodesicPath& g0, const GeodesicPath& g1, HalfInt delta,
                 std::int64_t horizon = kUnboundedHorizon);

// Same endpoints, same length: d(g0(t), g1(t)) <= 4*delta for every t.
bool checkFellowTravel(const Graph& g, const GeodesicPath& g0, const GeodesicPath& g1,
                       HalfInt delta, std::int64_t horizon = kUnboundedHorizon);

// Finite proxy for convergence at infinity: all pairwise Gromov products of
// the second half of the sequence reach `threshold`.
bool sequenceConvergesAtInfinity(const Graph& g, const std::vector<Vertex>& seq,
                                 std::int64_t threshold,
                                 std::int64_t horizon = kUnboundedHorizon);

}  // namespace dirspace

template <>
struct std::hash<dirspace::Vertex> {
  std::size_t operator()(const dirspace::Vertex& v) const noexcept {
    return std::hash<std::string>{}(v.code);
  }
};
