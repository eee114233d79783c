#include "dirspace/shortlex_axis.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

namespace dirspace {

namespace {

using EdgeKey = std::pair<Vertex, Vertex>;  // sorted endpoints

EdgeKey edgeKey(const Vertex& a, const Vertex& b) {
  return a < b ? EdgeKey{a, b} : EdgeKey{b, a};
}

struct Surrogate {
  std::set<Vertex> vertices;
  std::set<EdgeKey> edges;
  std::map<Vertex, std::vector<Vertex>> adjacency;

  void addPath(const GeodesicPath& p) {
    for (std::size_t i = 0; i < p.vertices.size(); ++i) {
      vertices.insert(p.vertices[i]);
      if (i + 1 < p.vertices.size()) edges.insert(edgeKey(p.vertices[i], p.vertices[i + 1]));
    }
  }
  void finalize() {
    for (const auto& [a, b] : edges) {
      adjacency[a].push_back(b);
      adjacency[b].push_back(a);
    }
    for (auto& [v, ns] : adjacency) std::sort(ns.begin(), ns.end());
  }
  std::map<Vertex, std::int64_t> bfsFrom(const Vertex& src) const {
    std::map<Vertex, std::int64_t> dist{{src, 0}};
    std::vector<Vertex> frontier{src};
    while (!frontier.empty()) {
      std::vector<Vertex> next;
      for (const Vertex& v : frontier) {
        auto it = adjacency.find(v);
        if (it == adjacency.end()) continue;
        for (const Vertex& w : it->second) {
          if (dist.emplace(w, dist.at(v) + 1).second) next.push_back(w);
        }
      }
      frontier = std::move(next);
    }
    return dist;
  }
};

struct LevelPath {
  std::vector<Vertex> vertices;
  std::vector<int> colors;

  bool operator<(const LevelPath& o) const {
    if (vertices.size() != o.vertices.size()) return vertices.size() < o.vertices.size();
    if (colors != o.colors) return colors < o.colors;
    return vertices < o.vertices;
  }
  bool operator==(const LevelPath& o) const { return vertices == o.vertices; }
};

struct AttemptFailed {
  std::string reason;
};

struct Attempt {
  const Graph& g;
  const Isometry& iso;
  std::int64_t ell;        // translation length of iso
  Vertex v0;               // axis witness
  std::int64_t K;          // ball radius
  std::int64_t n;          // candidate power
  std::int64_t levels;     // w
  std::uint64_t colorSeed;

  Surrogate A;
  std::vector<std::set<Vertex>> balls;  // B_{-w}..B_{w}, index i + w
  std::map<EdgeKey, int> colorOf;
  std::size_t colorCount = 0;
  std::vector<std::vector<LevelPath>> X;  // X_1..X_w

  const std::set<Vertex>& ball(std::int64_t i) const {
    return balls[static_cast<std::size_t>(i + levels)];
  }

  void buildSurrogate() {
    const std::int64_t span = (levels + 2) * n;
    const std::int64_t nearRadius = K + n * ell + 2;
    std::vector<Vertex> witnesses;
    for (const Vertex& v : ballVertices(g, v0, nearRadius)) {
      if (distance(g, v, iso.apply(v)) == ell) witnesses.push_back(v);
    }
    const std::set<Vertex> b0set = [&] {
      const auto vs = ballVertices(g, v0, K);
      return std::set<Vertex>(vs.begin(), vs.end());
    }();
    for (const Vertex& v : witnesses) {
      const Vertex from = applyPower(iso, -span, v);
      const Vertex to = applyPower(iso, span, v);
      const GeodesicPath geo = geodesic(g, from, to);
      bool meetsBall = false;
      for (const Vertex& w : geo.vertices) {
        if (b0set.count(w)) {
          meetsBall = true;
          break;
        }
      }
      if (!meetsBall)
        throw AttemptFailed{"a scanned near-axis geodesic misses the ball (property i)"};
      A.addPath(geo);
    }
    A.finalize();

    balls.assign(static_cast<std::size_t>(2 * levels + 1), {});
    for (std::int64_t i = -levels; i <= levels; ++i) {
      for (const Vertex& b : b0set)
        balls[static_cast<std::size_t>(i + levels)].insert(applyPower(iso, n * i, b));
    }
  }

  std::vector<Vertex> ballOnA(std::int64_t i) const {
    std::vector<Vertex> out;
    for (const Vertex& v : ball(i)) {
      if (A.vertices.count(v)) out.push_back(v);
    }
    return out;
  }

  void checkSeparation() const {
    // (ii) translated balls are pairwise disjoint on the surrogate.
    for (std::int64_t i = -levels; i <= levels; ++i) {
      for (std::int64_t j = i + 1; j <= levels; ++j) {
        for (const Vertex& v : ballOnA(i)) {
          if (ball(j).count(v))
            throw AttemptFailed{"translated balls overlap on the surrogate (property ii)"};
        }
      }
    }
    // (iii) every surrogate geodesic between translated balls crosses the
    // intermediate balls.
    for (std::int64_t i = -levels; i <= levels; ++i) {
      for (std::int64_t j = i + 1; j <= levels; ++j) {
        for (const Vertex& u : ballOnA(i)) {
          const auto distA = A.bfsFrom(u);
          for (const Vertex& v : ballOnA(j)) {
            auto it = distA.find(v);
            if (it == distA.end()) continue;
            if (it->second != distance(g, u, v)) continue;  // not g-minimal in A
            // Enumerate all shortest A-paths u -> v.
            std::vector<std::vector<Vertex>> stack{{u}};
            std::size_t expanded = 0;
            while (!stack.empty()) {
              auto path = stack.back();
              stack.pop_back();
              if (++expanded > 20000)
                throw AttemptFailed{"surrogate path enumeration exceeded its budget"};
              const Vertex& cur = path.back();
              if (cur == v) {
                for (std::int64_t k = i; k <= j; ++k) {
                  bool meets = false;
                  for (const Vertex& w : path) {
                    if (ball(k).count(w)) {
                      meets = true;
                      break;
                    }
                  }
                  if (!meets)
                    throw AttemptFailed{"a surrogate geodesic skips an intermediate ball"};
                }
                continue;
              }
              const std::int64_t remaining = it->second - (static_cast<std::int64_t>(path.size()) - 1);
              const std::int64_t curToV = it->second - distA.at(cur);
              (void)curToV;
              for (const Vertex& w : A.adjacency.at(cur)) {
                if (distA.at(v) - distA.at(w) >= 0 &&
                    distA.at(w) == distA.at(cur) + 1 &&
                    it->second - distA.at(w) == remaining - 1) {
                  auto extended = path;
                  extended.push_back(w);
                  stack.push_back(std::move(extended));
                }
              }
            }
          }
        }
      }
    }
  }

  void colorEdges() {
    // Orbit representatives of E(A) under iso^n, normalized by the minimal
    // visible image.
    std::map<EdgeKey, EdgeKey> repOf;
    const std::int64_t tMax = 2 * levels + 2;
    for (const EdgeKey& e : A.edges) {
      EdgeKey best = e;
      for (std::int64_t t = -tMax; t <= tMax; ++t) {
        const Vertex a = applyPower(iso, n * t, e.first);
        const Vertex b = applyPower(iso, n * t, e.second);
        if (!A.vertices.count(a) || !A.vertices.count(b)) continue;
        if (!A.edges.count(edgeKey(a, b))) continue;
        best = std::min(best, edgeKey(a, b));
      }
      repOf[e] = best;
    }
    std::vector<EdgeKey> reps;
    for (const auto& [e, r] : repOf) reps.push_back(r);
    std::sort(reps.begin(), reps.end());
    reps.erase(std::unique(reps.begin(), reps.end()), reps.end());

    // The finite representative set must already be displaced far enough.
    for (const EdgeKey& r : reps) {
      for (const Vertex& v : {r.first, r.second}) {
        if (distance(g, v, applyPower(iso, n, v)) <= 2)
          throw AttemptFailed{"representative displacement too small; raise the power"};
      }
    }

    // Colour order fixed by the seed.
    std::mt19937_64 rng(colorSeed);
    std::shuffle(reps.begin(), reps.end(), rng);
    std::map<EdgeKey, int> colorIndex;
    for (std::size_t i = 0; i < reps.size(); ++i) colorIndex[reps[i]] = static_cast<int>(i);
    colorCount = reps.size();
    for (const auto& [e, r] : repOf) colorOf[e] = colorIndex.at(r);

    // Each vertex sees each colour at most once.
    for (const auto& [v, ns] : A.adjacency) {
      std::set<int> seen;
      for (const Vertex& w : ns) {
        if (!seen.insert(colorOf.at(edgeKey(v, w))).second)
          throw AttemptFailed{"a vertex sees a colour twice; raise the power"};
      }
    }
  }

  LevelPath shortLexPath(const Vertex& u, const Vertex& v) const {
    // Unique because every vertex sees each colour at most once: among
    // shortest A-paths, greedily take the smallest-colour step.
    const auto distToV = A.bfsFrom(v);
    LevelPath p;
    p.vertices.push_back(u);
    Vertex cur = u;
    std::int64_t remaining = distToV.at(u);
    while (remaining > 0) {
      int bestColor = -1;
      Vertex bestNext;
      for (const Vertex& w : A.adjacency.at(cur)) {
        auto it = distToV.find(w);
        if (it == distToV.end() || it->second != remaining - 1) continue;
        const int c = colorOf.at(edgeKey(cur, w));
        if (bestColor < 0 || c < bestColor) {
          bestColor = c;
          bestNext = w;
        }
      }
      p.colors.push_back(bestColor);
      p.vertices.push_back(bestNext);
      cur = bestNext;
      --remaining;
    }
    return p;
  }

  void buildLevels() {
    X.assign(static_cast<std::size_t>(levels), {});
    for (std::int64_t i = 1; i <= levels; ++i) {
      std::vector<LevelPath> paths;
      for (const Vertex& u : ballOnA(-i)) {
        const auto distA = A.bfsFrom(u);
        for (const Vertex& v : ballOnA(i)) {
          auto it = distA.find(v);
          if (it == distA.end()) continue;
          if (it->second != distance(g, u, v)) continue;
          paths.push_back(shortLexPath(u, v));
        }
      }
      std::sort(paths.begin(), paths.end());
      paths.erase(std::unique(paths.begin(), paths.end()), paths.end());
      if (paths.empty()) throw AttemptFailed{"empty short-lex level"};
      X[static_cast<std::size_t>(i - 1)] = std::move(paths);
    }
  }

  // Minimal (short-lex) segment of `p` running from B_{-j} to B_{j}.
  LevelPath restrict(const LevelPath& p, std::int64_t j) const {
    std::optional<LevelPath> best;
    for (std::size_t s = 0; s < p.vertices.size(); ++s) {
      if (!ball(-j).count(p.vertices[s])) continue;
      for (std::size_t t = s; t < p.vertices.size(); ++t) {
        if (!ball(j).count(p.vertices[t])) continue;
        LevelPath seg;
        seg.vertices.assign(p.vertices.begin() + static_cast<std::ptrdiff_t>(s),
                            p.vertices.begin() + static_cast<std::ptrdiff_t>(t) + 1);
        seg.colors.assign(p.colors.begin() + static_cast<std::ptrdiff_t>(s),
                          p.colors.begin() + static_cast<std::ptrdiff_t>(t));
        if (!best || seg < *best) best = std::move(seg);
      }
    }
    if (!best) throw AttemptFailed{"a level path misses a translated ball"};
    return *best;
  }

  InverseSystem buildSystem() const {
    InverseSystem sys;
    for (const auto& level : X) sys.sizes.push_back(level.size());
    for (std::size_t i = 0; i + 1 < X.size(); ++i) {
      std::vector<int> mapDown;
      for (const LevelPath& p : X[i + 1]) {
        const LevelPath seg = restrict(p, static_cast<std::int64_t>(i) + 1);
        const auto it = std::find(X[i].begin(), X[i].end(), seg);
        if (it == X[i].end())
          throw AttemptFailed{"restricted segment is not short-lex minimal (truncation artifact)"};
        mapDown.push_back(static_cast<int>(it - X[i].begin()));
      }
      sys.consecutive.push_back(std::move(mapDown));
    }
    return sys;
  }
};

}  // namespace

ShortLexAxisResult shortLexAxis(const Graph& g, const Isometry& iso,
                                const TruncationProfile& profile, std::uint64_t colorSeed) {
  profile.validate();
  const IsometryClass cls = classify(g, iso, profile);
  if (cls.kind != IsometryKind::Hyperbolic)
    fail(Errc::NotHyperbolic, iso.label() + " classified as " + isometryKindName(cls.kind));
  const std::int64_t ell = cls.translationLength;
  const Vertex v0 = *cls.witness;

  // Measured hyperbolicity constant for the ball-size seed value.
  const auto sample = ballVertices(g, g.basepoint(), std::min<std::int64_t>(profile.horizon, 3));
  HyperbolicityOptions opts;
  opts.seed = profile.seed;
  const HyperbolicityReport hyp = estimateHyperbolicity(g, sample, opts);
  const double delta = std::max(hyp.deltaSlim.value(), hyp.deltaFourPoint.value());
  const std::int64_t k0 = static_cast<std::int64_t>(120.0 * delta) + 1;

  std::string lastReason = "no feasible ball radius and power";
  for (std::int64_t K = 0; K <= k0; ++K) {
    for (std::int64_t n = 1; n <= std::min<std::int64_t>(profile.powerBound, 12); ++n) {
      const std::int64_t mReport = std::max<std::int64_t>(9, ell);
      Attempt attempt{g,
                      iso,
                      ell,
                      v0,
                      K,
                      n,
                      /*levels=*/(mReport + K + n * ell) / (n * ell) + 1,
                      colorSeed,
                      {},
                      {},
                      {},
                      0,
                      {}};
      try {
        attempt.buildSurrogate();
        attempt.checkSeparation();
        attempt.colorEdges();
        attempt.buildLevels();
        const InverseSystem sys = attempt.buildSystem();
        const InverseLimitResult limit = solveInverseLimit(sys);
        const LevelPath& top =
            attempt.X.back()[static_cast<std::size_t>(limit.thread.back())];

        // Align the window on the vertex nearest the witness.
        std::size_t center = 0;
        std::int64_t bestDist = -1;
        for (std::size_t i = 0; i < top.vertices.size(); ++i) {
          const std::int64_t d = distance(g, v0, top.vertices[i]);
          if (bestDist < 0 || d < bestDist ||
              (d == bestDist && top.vertices[i] < top.vertices[center])) {
            bestDist = d;
            center = i;
          }
        }
        const std::int64_t lo = static_cast<std::int64_t>(center) - mReport;
        const std::int64_t hi = static_cast<std::int64_t>(center) + mReport;
        if (lo < 0 || hi >= static_cast<std::int64_t>(top.vertices.size()))
          throw AttemptFailed{"thread too short for the report window"};

        AxisWindow window;
        window.power = n;
        window.shift = n * ell;
        window.period = ell;
        window.center = mReport;
        for (std::int64_t i = lo; i <= hi; ++i)
          window.vertices.push_back(top.vertices[static_cast<std::size_t>(i)]);

        if (!axisWindowInvariantsHold(g, iso, window))
          throw AttemptFailed{"extracted thread fails the window invariants"};

        ShortLexAxisResult out;
        out.window = std::move(window);
        out.info.ballRadius = K;
        out.info.power = n;
        out.info.levels = attempt.levels;
        out.info.colorCount = attempt.colorCount;
        out.info.surrogateVertices = attempt.A.vertices.size();
        for (const auto& level : attempt.X) out.info.levelSizes.push_back(level.size());
        out.info.threadCount = limit.threadCount;
        return out;
      } catch (const AttemptFailed& f) {
        lastReason = f.reason + " (K=" + std::to_string(K) + ", n=" + std::to_string(n) + ")";
        continue;
      }
    }
  }
  if (lastReason.find("colour") != std::string::npos ||
      lastReason.find("displacement too small") != std::string::npos)
    fail(Errc::ColoringDegenerate, lastReason);
  fail(Errc::HorizonTooSmall, lastReason);
}

}  // namespace dirspace
