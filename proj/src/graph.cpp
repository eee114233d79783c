#include "dirspace/graph.hpp"

#include <algorithm>
#include <queue>
#include <random>
#include <unordered_map>
#include <unordered_set>

#include "dirspace/parallel.hpp"

namespace dirspace {

namespace {

std::string fmtVertex(const Vertex& v) { return v.code.empty() ? "<basepoint>" : v.code; }

// BFS distance map from `src` out to `radius`.
std::unordered_map<Vertex, std::int64_t> bfs(const Graph& g, const Vertex& src,
                                             std::int64_t radius) {
  std::unordered_map<Vertex, std::int64_t> dist;
  std::queue<Vertex> q;
  dist.emplace(src, 0);
  q.push(src);
  while (!q.empty()) {
    Vertex cur = q.front();
    q.pop();
    const std::int64_t d = dist.at(cur);
    if (d == radius) continue;
    for (const Vertex& w : g.neighbors(cur)) {
      if (dist.emplace(w, d + 1).second) q.push(w);
    }
  }
  return dist;
}

}  // namespace

bool adjacent(const Graph& g, const Vertex& u, const Vertex& v) {
  const auto ns = g.neighbors(u);
  return std::find(ns.begin(), ns.end(), v) != ns.end();
}

std::int64_t distance(const Graph& g, const Vertex& u, const Vertex& v, std::int64_t horizon) {
  if (u == v) return 0;
  if (auto hint = g.distanceHint(u, v)) {
    if (*hint > horizon)
      fail(Errc::Unreachable, "no path of length <= " + std::to_string(horizon) + " between " +
                                  fmtVertex(u) + " and " + fmtVertex(v));
    return *hint;
  }
  // Two-sided BFS, alternating the smaller frontier.
  std::unordered_map<Vertex, std::int64_t> du{{u, 0}}, dv{{v, 0}};
  std::vector<Vertex> fu{u}, fv{v};
  std::int64_t ru = 0, rv = 0;
  while (!fu.empty() || !fv.empty()) {
    if (ru + rv >= horizon) break;
    const bool expandU = !fu.empty() && (fu.size() <= fv.size() || fv.empty());
    auto& frontier = expandU ? fu : fv;
    auto& mine = expandU ? du : dv;
    auto& theirs = expandU ? dv : du;
    auto& r = expandU ? ru : rv;
    std::vector<Vertex> next;
    for (const Vertex& cur : frontier) {
      for (const Vertex& w : g.neighbors(cur)) {
        if (mine.emplace(w, r + 1).second) {
          if (auto it = theirs.find(w); it != theirs.end()) {
            // Meeting point gives an upper bound; with layer-synchronous
            // expansion it is exact.
            return r + 1 + it->second;
          }
          next.push_back(w);
        }
      }
    }
    ++r;
    frontier = std::move(next);
  }
  fail(Errc::Unreachable, "no path of length <= " + std::to_string(horizon) + " between " +
                              fmtVertex(u) + " and " + fmtVertex(v));
}

GeodesicPath geodesic(const Graph& g, const Vertex& u, const Vertex& v, std::int64_t horizon) {
  const std::int64_t d = distance(g, u, v, horizon);
  GeodesicPath path;
  path.vertices.reserve(static_cast<std::size_t>(d) + 1);
  path.vertices.push_back(u);
  Vertex cur = u;
  for (std::int64_t remaining = d; remaining > 0; --remaining) {
    std::optional<Vertex> best;
    for (const Vertex& w : g.neighbors(cur)) {
      std::int64_t dw;
      try {
        dw = distance(g, w, v, remaining);
      } catch (const Error&) {
        continue;
      }
      if (dw != remaining - 1) continue;
      if (!best || w < *best) best = w;
    }
    if (!best) fail(Errc::Unreachable, "geodesic walk stalled at " + fmtVertex(cur));
    path.vertices.push_back(*best);
    cur = *best;
  }
  return path;
}

bool isGeodesic(const Graph& g, const GeodesicPath& p, std::int64_t horizon) {
  if (p.vertices.empty()) return false;
  for (std::size_t i = 0; i + 1 < p.vertices.size(); ++i) {
    if (!adjacent(g, p.vertices[i], p.vertices[i + 1])) return false;
  }
  return distance(g, p.front(), p.back(), horizon) == p.length();
}

HalfInt gromovProduct(const Graph& g, const Vertex& x, const Vertex& y, const Vertex& p,
                      std::int64_t horizon) {
  const std::int64_t dxp = distance(g, x, p, horizon);
  const std::int64_t dyp = distance(g, y, p, horizon);
  const std::int64_t dxy = distance(g, x, y, horizon);
  return HalfInt::halves(dxp + dyp - dxy);
}

std::vector<Vertex> ballVertices(const Graph& g, const Vertex& center, std::int64_t radius) {
  auto dist = bfs(g, center, radius);
  std::vector<std::pair<std::int64_t, Vertex>> order;
  order.reserve(dist.size());
  for (auto& [v, d] : dist) order.emplace_back(d, v);
  std::sort(order.begin(), order.end());
  std::vector<Vertex> out;
  out.reserve(order.size());
  for (auto& [d, v] : order) out.push_back(v);
  return out;
}

namespace {

// Distance from every vertex of `side` to the union of the other two sides,
// via multi-source BFS from the union.
std::int64_t sideNeighborhoodDefect(const Graph& g, const GeodesicPath& side,
                                    const std::vector<Vertex>& others) {
  std::unordered_map<Vertex, std::int64_t> dist;
  std::queue<Vertex> q;
  for (const Vertex& v : others) {
    if (dist.emplace(v, 0).second) q.push(v);
  }
  std::unordered_set<Vertex> pending(side.vertices.begin(), side.vertices.end());
  for (const Vertex& v : side.vertices) {
    if (dist.count(v)) pending.erase(v);
  }
  while (!q.empty() && !pending.empty()) {
    Vertex cur = q.front();
    q.pop();
    const std::int64_t d = dist.at(cur);
    for (const Vertex& w : g.neighbors(cur)) {
      if (dist.emplace(w, d + 1).second) {
        pending.erase(w);
        q.push(w);
      }
    }
  }
  if (!pending.empty()) fail(Errc::Unreachable, "triangle side separated from the other sides");
  std::int64_t worst = 0;
  for (const Vertex& v : side.vertices) worst = std::max(worst, dist.at(v));
  return worst;
}

}  // namespace

HyperbolicityReport estimateHyperbolicity(const Graph& g, const std::vector<Vertex>& sample,
                                          const HyperbolicityOptions& opts) {
  if (sample.empty()) fail(Errc::EmptySample, "hyperbolicity scan needs a nonempty sample");
  const std::size_t n = sample.size();

  HyperbolicityReport report;
  report.sampleSpec = std::to_string(n) + " vertices of " + g.describe();

  // Four-point scan. Quadruples are indexed (x,y,z,p) over sample^4.
  const auto quadDefect = [&](std::size_t xi, std::size_t yi, std::size_t zi,
                              std::size_t pi) -> std::int64_t {
    const Vertex& x = sample[xi];
    const Vertex& y = sample[yi];
    const Vertex& z = sample[zi];
    const Vertex& p = sample[pi];
    const HalfInt xy = gromovProduct(g, x, y, p, opts.horizon);
    const HalfInt xz = gromovProduct(g, x, z, p, opts.horizon);
    const HalfInt yz = gromovProduct(g, y, z, p, opts.horizon);
    return (minHalf(xz, yz) - xy).twice;
  };

  const double total4 = static_cast<double>(n) * n * n * n;
  std::int64_t worst4 = 0;
  if (total4 <= static_cast<double>(opts.maxQuadruples)) {
    const std::size_t count = n * n * n * n;
    auto chunkMax = parallelChunks<std::int64_t>(count, [&](std::size_t b, std::size_t e) {
      std::int64_t best = 0;
      for (std::size_t idx = b; idx < e; ++idx) {
        std::size_t t = idx;
        const std::size_t pi = t % n;
        t /= n;
        const std::size_t zi = t % n;
        t /= n;
        const std::size_t yi = t % n;
        t /= n;
        best = std::max(best, quadDefect(t, yi, zi, pi));
      }
      return best;
    });
    for (auto m : chunkMax) worst4 = std::max(worst4, m);
    report.quadruplesScanned = count;
  } else {
    std::mt19937_64 rng(opts.seed);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::vector<std::array<std::size_t, 4>> quads(opts.maxQuadruples);
    for (auto& q : quads) q = {pick(rng), pick(rng), pick(rng), pick(rng)};
    auto chunkMax = parallelChunks<std::int64_t>(quads.size(), [&](std::size_t b, std::size_t e) {
      std::int64_t best = 0;
      for (std::size_t i = b; i < e; ++i)
        best = std::max(best, quadDefect(quads[i][0], quads[i][1], quads[i][2], quads[i][3]));
      return best;
    });
    for (auto m : chunkMax) worst4 = std::max(worst4, m);
    report.quadruplesScanned = quads.size();
    report.quadruplesExhaustive = false;
    report.sampleSpec += ", quadruples subsampled seed " + std::to_string(opts.seed);
  }
  report.deltaFourPoint = HalfInt::halves(std::max<std::int64_t>(worst4, 0));

  // Slim-triangle scan over unordered triples with tie-broken sides.
  std::vector<std::array<std::size_t, 3>> triangles;
  const double total3 = static_cast<double>(n) * (n - 1) * (n - 2) / 6.0;
  if (total3 <= static_cast<double>(opts.maxTriangles)) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        for (std::size_t c = b + 1; c < n; ++c) triangles.push_back({a, b, c});
  } else {
    std::mt19937_64 rng(opts.seed ^ 0x9e3779b97f4a7c15ULL);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    while (triangles.size() < opts.maxTriangles) {
      std::array<std::size_t, 3> t = {pick(rng), pick(rng), pick(rng)};
      if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2]) continue;
      triangles.push_back(t);
    }
    report.trianglesExhaustive = false;
    report.sampleSpec += ", triangles subsampled seed " + std::to_string(opts.seed);
  }
  report.trianglesScanned = triangles.size();

  auto slimMax = parallelChunks<std::int64_t>(triangles.size(), [&](std::size_t b, std::size_t e) {
    std::int64_t best = 0;
    for (std::size_t i = b; i < e; ++i) {
      const Vertex& x = sample[triangles[i][0]];
      const Vertex& y = sample[triangles[i][1]];
      const Vertex& z = sample[triangles[i][2]];
      const GeodesicPath xy = geodesic(g, x, y, opts.horizon);
      const GeodesicPath yz = geodesic(g, y, z, opts.horizon);
      const GeodesicPath zx = geodesic(g, z, x, opts.horizon);
      const auto unionOf = [](const GeodesicPath& a, const GeodesicPath& b) {
        std::vector<Vertex> u = a.vertices;
        u.insert(u.end(), b.vertices.begin(), b.vertices.end());
        return u;
      };
      best = std::max(best, sideNeighborhoodDefect(g, xy, unionOf(yz, zx)));
      best = std::max(best, sideNeighborhoodDefect(g, yz, unionOf(zx, xy)));
      best = std::max(best, sideNeighborhoodDefect(g, zx, unionOf(xy, yz)));
    }
    return best;
  });
  std::int64_t worstSlim = 0;
  for (auto m : slimMax) worstSlim = std::max(worstSlim, m);
  report.deltaSlim = HalfInt::whole(worstSlim);
  return report;
}

bool checkStandardEstimate(const Graph& g, const Vertex& p, const Vertex& x, const Vertex& y,
                           HalfInt delta, std::int64_t horizon) {
  const GeodesicPath gamma = geodesic(g, x, y, horizon);
  std::int64_t dpGamma = kUnboundedHorizon;
  for (const Vertex& v : gamma.vertices) dpGamma = std::min(dpGamma, distance(g, p, v, horizon));
  const HalfInt product = gromovProduct(g, x, y, p, horizon);
  const HalfInt upper = HalfInt::whole(dpGamma);
  const HalfInt lower = upper - delta - delta;
  return lower <= product && product <= upper;
}

bool checkRibbon(const Graph& g, const GeodesicPath& g0, const GeodesicPath& g1, HalfInt delta,
                 std::int64_t horizon) {
  if (!isGeodesic(g, g0, horizon) || !isGeodesic(g, g1, horizon))
    fail(Errc::NotGeodesic, "ribbon check requires geodesic inputs");
  const std::int64_t startGap = distance(g, g0.front(), g1.front(), horizon);
  const std::int64_t endGap = distance(g, g0.back(), g1.back(), horizon);
  // Bound 8*delta + 2*d(starts) + 2*d(ends), in half-units.
  const HalfInt bound =
      HalfInt::halves(8 * delta.twice) + HalfInt::whole(2 * startGap + 2 * endGap);
  for (const Vertex& v : g0.vertices) {
    std::int64_t nearest = kUnboundedHorizon;
    for (const Vertex& w : g1.vertices) nearest = std::min(nearest, distance(g, v, w, horizon));
    if (HalfInt::whole(nearest) > bound) return false;
  }
  return true;
}

bool checkFellowTravel(const Graph& g, const GeodesicPath& g0, const GeodesicPath& g1,
                       HalfInt delta, std::int64_t horizon) {
  if (g0.vertices.empty() || g1.vertices.empty())
    fail(Errc::EndpointMismatch, "fellow-travel check requires nonempty paths");
  if (g0.front() != g1.front() || g0.back() != g1.back() || g0.length() != g1.length())
    fail(Errc::EndpointMismatch, "fellow-travel check requires equal endpoints and lengths");
  const HalfInt bound = HalfInt::halves(4 * delta.twice);
  for (std::size_t t = 0; t < g0.vertices.size(); ++t) {
    if (HalfInt::whole(distance(g, g0.vertices[t], g1.vertices[t], horizon)) > bound) return false;
  }
  return true;
}

bool sequenceConvergesAtInfinity(const Graph& g, const std::vector<Vertex>& seq,
                                 std::int64_t threshold, std::int64_t horizon) {
  if (seq.empty()) return false;
  const Vertex p = g.basepoint();
  const std::size_t tail = seq.size() / 2;
  for (std::size_t i = tail; i < seq.size(); ++i) {
    for (std::size_t j = i; j < seq.size(); ++j) {
      if (gromovProduct(g, seq[i], seq[j], p, horizon) < HalfInt::whole(threshold)) return false;
    }
  }
  return true;
}

}  // namespace dirspace
