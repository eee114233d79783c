#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dirspace/classify.hpp"
#include "dirspace/graph.hpp"
#include "dirspace/inverse_limit.hpp"
#include "dirspace/isometry.hpp"
#include "dirspace/profile.hpp"

namespace dirspace {

struct ShortLexInfo {
  std::int64_t ballRadius = 0;    // K, minimized while the separation holds
  std::int64_t power = 0;         // n with separation and a proper coloring
  std::int64_t levels = 0;        // depth of the inverse system
  std::size_t colorCount = 0;
  std::size_t surrogateVertices = 0;
  std::vector<std::size_t> levelSizes;  // |X_i|
  std::size_t threadCount = 0;
};

struct ShortLexAxisResult {
  AxisWindow window;
  ShortLexInfo info;
};

// Faithful finite run of the invariant-geodesic construction: build the
// near-axis surrogate, certify the ball separation properties, color edge
// orbits (order seeded by colorSeed), form the short-lex path levels with
// their restriction maps, and extract a thread of the inverse limit.
ShortLexAxisResult shortLexAxis(const Graph& g, const Isometry& iso,
                                const TruncationProfile& profile, std::uint64_t colorSeed);

}  // namespace dirspace
