#include "dirspace/classify.hpp"

#include <algorithm>

namespace dirspace {

const char* isometryKindName(IsometryKind k) {
  switch (k) {
    case IsometryKind::Elliptic: return "Elliptic";
    case IsometryKind::Hyperbolic: return "Hyperbolic";
    case IsometryKind::Undetermined: return "Undetermined";
  }
  return "?";
}

void validateIsometry(const Graph& g, const Isometry& iso, std::int64_t horizon) {
  const auto ball = ballVertices(g, g.basepoint(), std::min<std::int64_t>(horizon, 4));
  for (const Vertex& v : ball) {
    if (iso.applyInverse(iso.apply(v)) != v)
      fail(Errc::InvalidIsometry, "backward . forward != identity at " + v.code);
    const Vertex fv = iso.apply(v);
    for (const Vertex& w : g.neighbors(v)) {
      if (!adjacent(g, fv, iso.apply(w)))
        fail(Errc::InvalidIsometry,
             "adjacency broken on edge (" + v.code + ", " + w.code + ")");
    }
  }
}

namespace {

// Exact linear growth d(v, g^k(v)) = k*len for all 1 <= k <= kMax.
bool linearGrowth(const Graph& g, const Isometry& iso, const Vertex& v, std::int64_t len,
                  std::int64_t kMax) {
  Vertex cur = v;
  for (std::int64_t k = 1; k <= kMax; ++k) {
    cur = iso.apply(cur);
    if (distance(g, v, cur) != k * len) return false;
  }
  return true;
}

}  // namespace

IsometryClass classify(const Graph& g, const Isometry& iso, const TruncationProfile& profile) {
  profile.validate();
  validateIsometry(g, iso, profile.horizon);
  const auto ball = ballVertices(g, g.basepoint(), profile.horizon);
  const std::int64_t N = profile.powerBound;

  // Elliptic scan: an orbit that stays within the horizon and closes.
  for (const Vertex& v : ball) {
    Vertex cur = v;
    std::int64_t diameter = 0;
    for (std::int64_t k = 1; k <= N; ++k) {
      cur = iso.apply(cur);
      const std::int64_t d = distance(g, v, cur);
      diameter = std::max(diameter, d);
      if (d > profile.horizon) break;
      if (cur == v) {
        IsometryClass out;
        out.kind = IsometryKind::Elliptic;
        out.witness = v;
        out.orbitDiameter = diameter;
        out.orbitPeriod = k;
        return out;
      }
    }
  }

  // Hyperbolic scan: minimal displacement with exact linear growth.
  std::int64_t minDisp = -1;
  for (const Vertex& v : ball) {
    const std::int64_t d = distance(g, v, iso.apply(v));
    if (minDisp < 0 || d < minDisp) minDisp = d;
  }
  if (minDisp > 0) {
    for (const Vertex& v : ball) {
      if (distance(g, v, iso.apply(v)) != minDisp) continue;
      if (linearGrowth(g, iso, v, minDisp, N)) {
        IsometryClass out;
        out.kind = IsometryKind::Hyperbolic;
        out.witness = v;
        out.translationLength = minDisp;
        return out;
      }
    }
  }

  IsometryClass out;
  out.kind = IsometryKind::Undetermined;
  out.diagnostics = "no closed orbit within horizon " + std::to_string(profile.horizon) +
                    " and no displacement-" + std::to_string(minDisp) +
                    " vertex with linear growth up to N=" + std::to_string(N) +
                    "; enlarge the truncation profile";
  return out;
}

std::int64_t translationLength(const Graph& g, const Isometry& iso,
                               const TruncationProfile& profile) {
  const IsometryClass c = classify(g, iso, profile);
  if (c.kind != IsometryKind::Hyperbolic)
    fail(Errc::NotHyperbolic,
         iso.label() + " classified as " + isometryKindName(c.kind));
  return c.translationLength;
}

TruncatedEnd attractingEnd(const Graph& g, const Isometry& iso, const TruncationProfile& profile) {
  const IsometryClass c = classify(g, iso, profile);
  if (c.kind != IsometryKind::Hyperbolic)
    fail(Errc::NotHyperbolic,
         iso.label() + " classified as " + isometryKindName(c.kind));
  TruncatedEnd end;
  end.basepoint = g.basepoint();
  Vertex cur = end.basepoint;
  for (std::int64_t n = 1; n <= profile.powerBound; ++n) {
    cur = iso.apply(cur);
    end.orbit.push_back(cur);
  }
  if (!sequenceConvergesAtInfinity(g, end.orbit, profile.endThreshold))
    fail(Errc::ConvergenceCheckFailed,
         "orbit of " + iso.label() + " fails the convergence proxy at threshold " +
             std::to_string(profile.endThreshold) + "; enlarge the power bound");
  return end;
}

bool sameEnd(const Graph& g, const TruncatedEnd& a, const TruncatedEnd& b,
             std::int64_t threshold) {
  if (a.basepoint != b.basepoint)
    fail(Errc::Incompatible, "ends must share a basepoint");
  const std::size_t tailA = a.orbit.size() / 2;
  const std::size_t tailB = b.orbit.size() / 2;
  for (std::size_t i = tailA; i < a.orbit.size(); ++i) {
    for (std::size_t j = tailB; j < b.orbit.size(); ++j) {
      if (gromovProduct(g, a.orbit[i], b.orbit[j], a.basepoint) < HalfInt::whole(threshold))
        return false;
    }
  }
  return true;
}

namespace {

// Witness for the smallest power with certified linear displacement growth.
struct PowerWitness {
  std::int64_t power;
  std::int64_t shift;  // displacement of iso^power at the witness
  Vertex vertex;
};

bool linearPowerGrowth(const Graph& g, const Isometry& iso, std::int64_t p, const Vertex& v,
                       std::int64_t len, std::int64_t kMax) {
  Vertex cur = v;
  for (std::int64_t k = 1; k <= kMax; ++k) {
    cur = applyPower(iso, p, cur);
    if (distance(g, v, cur) != k * len) return false;
  }
  return true;
}

std::optional<PowerWitness> findPowerWitness(const Graph& g, const Isometry& iso,
                                             const TruncationProfile& profile) {
  const auto ball = ballVertices(g, g.basepoint(), profile.horizon);
  for (std::int64_t p = 1; p <= profile.powerBound; ++p) {
    std::int64_t minDisp = -1;
    for (const Vertex& v : ball) {
      const std::int64_t d = distance(g, v, applyPower(iso, p, v));
      if (minDisp < 0 || d < minDisp) minDisp = d;
    }
    if (minDisp <= 0) continue;
    const std::int64_t kMax = std::max<std::int64_t>(3, profile.powerBound / p);
    for (const Vertex& v : ball) {
      if (distance(g, v, applyPower(iso, p, v)) != minDisp) continue;
      if (linearPowerGrowth(g, iso, p, v, minDisp, kMax)) return PowerWitness{p, minDisp, v};
    }
  }
  return std::nullopt;
}

}  // namespace

AxisWindow findAxis(const Graph& g, const Isometry& iso, const TruncationProfile& profile) {
  const IsometryClass c = classify(g, iso, profile);
  if (c.kind != IsometryKind::Hyperbolic)
    fail(Errc::NotHyperbolic,
         iso.label() + " classified as " + isometryKindName(c.kind));

  const auto witness = findPowerWitness(g, iso, profile);
  if (!witness)
    fail(Errc::AxisNotFoundWithinHorizon,
         "no power of " + iso.label() + " with certified linear growth in the window");
  const std::int64_t p = witness->power;
  const std::int64_t shift = witness->shift;
  const Vertex v0 = witness->vertex;

  // One translated segment, then images of it under powers: equivariance of
  // the window holds by construction and geodesity is verified afterwards.
  Vertex vNext = applyPower(iso, p, v0);
  const GeodesicPath segment = geodesic(g, v0, vNext);

  const std::int64_t mReport = std::max<std::int64_t>(9, shift);
  const std::int64_t segEach = (mReport + shift - 1) / shift;

  std::vector<Vertex> window;
  for (std::int64_t k = -segEach; k < segEach; ++k) {
    for (std::size_t i = 0; i < segment.vertices.size(); ++i) {
      if (k > -segEach && i == 0) continue;  // drop duplicated junction vertex
      window.push_back(applyPower(iso, p * k, segment.vertices[i]));
    }
  }

  const std::int64_t total = static_cast<std::int64_t>(window.size()) - 1;
  if (distance(g, window.front(), window.back()) != total)
    fail(Errc::AxisNotFoundWithinHorizon,
         "orbit segment concatenation is not geodesic; enlarge the horizon");

  // Trim to [-mReport, mReport] around the witness.
  const std::int64_t centerIdx = segEach * shift;
  AxisWindow out;
  out.power = p;
  out.shift = shift;
  out.period = (shift % p == 0) ? shift / p : shift;
  const std::int64_t lo = centerIdx - mReport;
  const std::int64_t hi = centerIdx + mReport;
  for (std::int64_t i = lo; i <= hi; ++i) out.vertices.push_back(window[static_cast<std::size_t>(i)]);
  out.center = mReport;
  return out;
}

bool axisWindowInvariantsHold(const Graph& g, const Isometry& iso, const AxisWindow& w) {
  const std::int64_t n = static_cast<std::int64_t>(w.vertices.size());
  if (n == 0 || w.shift <= 0 || w.power <= 0) return false;
  for (std::int64_t i = 0; i + 1 < n; ++i) {
    if (!adjacent(g, w.vertices[static_cast<std::size_t>(i)], w.vertices[static_cast<std::size_t>(i + 1)]))
      return false;
  }
  if (distance(g, w.vertices.front(), w.vertices.back()) != n - 1) return false;
  for (std::int64_t i = 0; i + w.shift < n; ++i) {
    if (applyPower(iso, w.power, w.vertices[static_cast<std::size_t>(i)]) !=
        w.vertices[static_cast<std::size_t>(i + w.shift)])
      return false;
  }
  return true;
}

}  // namespace dirspace
