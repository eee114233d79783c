#include "dirspace/directions.hpp"

#include <algorithm>
#include <cmath>

#include "dirspace/classify.hpp"

namespace dirspace {

bool movesTowardsInfinity(const Instance& inst, const ElemPtr& e,
                          const TruncationProfile& profile) {
  return scaleEstimate(inst, e, profile).value > 1;
}

namespace {

// log(index) / (n * log(base)), exact at the endpoints the acceptance
// criteria pin: 0 when the index is 1, 1 when the index equals base^n.
double logRatio(const BigInt& index, const BigInt& base, std::int64_t n) {
  if (index == 1) return 0.0;
  if (index == bigPow(base, static_cast<unsigned>(n))) return 1.0;
  return logBig(index) / (static_cast<double>(n) * logBig(base));
}

struct RayDistances {
  std::vector<BigInt> products;  // d-products of the matched rays, n = 0..N
  double maxLog = 0.0;
  BigInt maxProduct = 1;
  bool bounded = false;          // max over second half <= max over first half
  bool monotoneGrowth = false;   // non-decreasing and strictly larger at the end
};

RayDistances rayDistances(const Instance& inst, const ElemPtr& a, std::int64_t ka,
                          const CosHandle& ua, const ElemPtr& b, std::int64_t kb,
                          const CosHandle& ub, std::int64_t N) {
  RayDistances out;
  const ElemPtr stepA = elementPower(inst, a, ka);
  const ElemPtr stepB = elementPower(inst, b, kb);
  CosHandle ha = ua;
  CosHandle hb = ub;
  for (std::int64_t n = 0; n <= N; ++n) {
    if (n > 0) {
      ha = inst.conjugateHandle(stepA, ha);
      hb = inst.conjugateHandle(stepB, hb);
    }
    out.products.push_back(cosDistance(inst, ha, hb).product);
  }
  BigInt firstMax = 1, secondMax = 1;
  bool monotone = true;
  for (std::size_t i = 0; i < out.products.size(); ++i) {
    const BigInt& p = out.products[i];
    if (i <= out.products.size() / 2) {
      if (p > firstMax) firstMax = p;
    } else {
      if (p > secondMax) secondMax = p;
    }
    if (i > 0 && p < out.products[i - 1]) monotone = false;
    if (p > out.maxProduct) out.maxProduct = p;
  }
  out.maxLog = logBig(out.maxProduct);
  out.bounded = secondMax <= firstMax;
  out.monotoneGrowth =
      monotone && out.products.back() > out.products[out.products.size() / 2];
  return out;
}

}  // namespace

AsymptoticVerdict asymptotic(const Instance& inst, const ElemPtr& a, const ElemPtr& b,
                             const TruncationProfile& profile) {
  profile.validate();
  const BigInt sa = scaleEstimate(inst, a, profile).value;
  const BigInt sb = scaleEstimate(inst, b, profile).value;
  const CosHandle ua = inst.defaultBaseHandle(a, profile);
  const CosHandle ub = inst.defaultBaseHandle(b, profile);
  const std::int64_t K = std::min<std::int64_t>(profile.exponentBound, 64);

  // Stage 1: pairs with an exact scale match, ordered by (sum, kAlpha).
  std::vector<std::pair<std::int64_t, std::int64_t>> candidates;
  for (std::int64_t sum = 2; sum <= 2 * K; ++sum) {
    for (std::int64_t ka = 1; ka < sum; ++ka) {
      const std::int64_t kb = sum - ka;
      if (ka > K || kb > K || kb < 1) continue;
      if (bigPow(sa, static_cast<unsigned>(ka)) == bigPow(sb, static_cast<unsigned>(kb)))
        candidates.emplace_back(ka, kb);
    }
    if (candidates.size() >= 24) break;
  }
  // Stage 2: nearest speed matches by |ka*log sa - kb*log sb|.
  {
    std::vector<std::tuple<double, std::int64_t, std::int64_t>> approx;
    const double la = logBig(sa), lb = logBig(sb);
    for (std::int64_t ka = 1; ka <= std::min<std::int64_t>(K, 8); ++ka) {
      for (std::int64_t kb = 1; kb <= std::min<std::int64_t>(K, 8); ++kb) {
        approx.emplace_back(std::abs(ka * la - kb * lb), ka + kb, ka * 1000 + kb);
      }
    }
    std::sort(approx.begin(), approx.end());
    for (const auto& [gap, sum, code] : approx) {
      const std::int64_t ka = code / 1000, kb = code % 1000;
      if (std::find(candidates.begin(), candidates.end(), std::make_pair(ka, kb)) ==
          candidates.end())
        candidates.emplace_back(ka, kb);
      if (candidates.size() >= 40) break;
    }
  }

  bool allGrow = true;
  for (const auto& [ka, kb] : candidates) {
    const RayDistances d = rayDistances(inst, a, ka, ua, b, kb, ub, profile.powerBound);
    if (d.bounded) {
      AsymptoticVerdict v;
      v.related = true;
      v.kAlpha = ka;
      v.kBeta = kb;
      v.boundWitness = d.maxLog;
      v.boundWitnessProduct = d.maxProduct;
      v.detail = "rays stay within log-distance " + std::to_string(d.maxLog);
      return v;
    }
    if (!d.monotoneGrowth) allGrow = false;
  }
  if (!allGrow)
    fail(Errc::Inconclusive,
         "no exponent pair stabilizes and growth is not certified monotone; enlarge the window");
  AsymptoticVerdict v;
  v.related = false;
  v.growthCertified = true;
  v.detail = "every speed-matched ray pair grows monotonically over the window";
  return v;
}

DeltaPlusTable deltaPlus(const Instance& inst, const ElemPtr& a, const ElemPtr& b,
                         const CosHandle& u, const CosHandle& v,
                         const TruncationProfile& profile) {
  profile.validate();
  const BigInt sa = scaleEstimate(inst, a, profile).value;
  const BigInt sb = scaleEstimate(inst, b, profile).value;
  if (sa <= 1)
    fail(Errc::NotTowardsInfinity, a->label() + " does not move towards infinity");
  if (sb <= 1)
    fail(Errc::NotTowardsInfinity, b->label() + " does not move towards infinity");

  DeltaPlusTable out;
  out.baseU = u;
  out.baseV = v;
  const std::int64_t N = profile.powerBound;
  const std::int64_t K = profile.exponentBound;
  const double logC = std::log(inst.indexSlackConstant());
  const double logSa = logBig(sa);

  // beta^k(V) handles, k = 0..K, computed once.
  std::vector<CosHandle> bRay{v};
  for (std::int64_t k = 1; k <= K; ++k) bRay.push_back(inst.conjugateHandle(b, bRay.back()));

  CosHandle aHandle = u;
  BigInt saPow = 1;
  for (std::int64_t n = 1; n <= N; ++n) {
    aHandle = inst.conjugateHandle(a, aHandle);
    saPow *= sa;

    DeltaRow row;
    row.n = n;
    BigInt sbPow = 1;  // s(b)^k
    bool first = true;
    for (std::int64_t k = 0; k <= K; ++k) {
      if (k > 0) sbPow *= sb;
      if (sbPow > saPow) break;  // scale constraint s(b^k) <= s(a^n)
      const BigInt idx = inst.index(aHandle, bRay[static_cast<std::size_t>(k)]);
      if (first || idx < row.index) {
        row.index = idx;
        row.k = k;
        first = false;
      }
    }
    if (first)
      fail(Errc::NotTowardsInfinity, "no admissible exponent k at n=" + std::to_string(n));
    row.value = logRatio(row.index, sa, n);
    row.slack = logC / (static_cast<double>(n) * logSa);
    out.rows.push_back(std::move(row));
  }

  const std::int64_t half = (N + 1) / 2;
  for (const DeltaRow& row : out.rows) {
    if (row.n >= half) out.headline = std::max(out.headline, row.value);
  }
  out.slack = logC / (static_cast<double>(half) * logSa);
  return out;
}

DeltaReport deltaPseudometricWith(const Instance& inst, const ElemPtr& a, const ElemPtr& b,
                                  const CosHandle& u, const CosHandle& v,
                                  const TruncationProfile& profile) {
  DeltaReport out;
  out.ab = deltaPlus(inst, a, b, u, v, profile);
  out.ba = deltaPlus(inst, b, a, v, u, profile);
  out.delta = out.ab.headline + out.ba.headline;
  out.slack = out.ab.slack + out.ba.slack;
  if (out.delta <= 2.0 * out.slack)
    out.verdict = "same-class";
  else if (out.delta >= 2.0 - 2.0 * out.slack)
    out.verdict = "distinct";
  else
    out.verdict = "inconclusive";
  return out;
}

DeltaReport deltaPseudometric(const Instance& inst, const ElemPtr& a, const ElemPtr& b,
                              const TruncationProfile& profile) {
  return deltaPseudometricWith(inst, a, b, inst.defaultBaseHandle(a, profile),
                               inst.defaultBaseHandle(b, profile), profile);
}

namespace {

// Same-class test for grouping: attracting-end comparison on graph
// instances, ray comparison elsewhere.
bool sameDirectionClass(const Instance& inst, const ElemPtr& a, const ElemPtr& b,
                        const TruncationProfile& profile) {
  if (const Graph* g = inst.graph()) {
    const auto isoA = inst.isometryOf(a);
    const auto isoB = inst.isometryOf(b);
    if (isoA && isoB) {
      const TruncatedEnd ea = attractingEnd(*g, **isoA, profile);
      const TruncatedEnd eb = attractingEnd(*g, **isoB, profile);
      return sameEnd(*g, ea, eb, profile.endThreshold);
    }
  }
  return asymptotic(inst, a, b, profile).related;
}

}  // namespace

DirectionReport directionReport(const Instance& inst, const std::vector<ElemPtr>& elements,
                                const TruncationProfile& profile) {
  profile.validate();
  DirectionReport out;
  for (const ElemPtr& e : elements) out.labels.push_back(e->label());

  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (movesTowardsInfinity(inst, elements[i], profile)) out.considered.push_back(i);
  }

  // Greedy grouping against class representatives.
  std::vector<std::size_t> reps;
  out.classOf.assign(out.considered.size(), -1);
  for (std::size_t ci = 0; ci < out.considered.size(); ++ci) {
    const ElemPtr& e = elements[out.considered[ci]];
    bool placed = false;
    for (std::size_t r = 0; r < reps.size(); ++r) {
      if (sameDirectionClass(inst, elements[reps[r]], e, profile)) {
        out.classOf[ci] = static_cast<int>(r);
        placed = true;
        break;
      }
    }
    if (!placed) {
      out.classOf[ci] = static_cast<int>(reps.size());
      reps.push_back(out.considered[ci]);
    }
  }
  out.classCount = static_cast<int>(reps.size());

  for (std::size_t i = 0; i < out.considered.size(); ++i) {
    for (std::size_t j = i + 1; j < out.considered.size(); ++j) {
      DirectionPairReport pair;
      pair.first = out.considered[i];
      pair.second = out.considered[j];
      pair.sameClass = out.classOf[i] == out.classOf[j];
      try {
        pair.delta = deltaPseudometric(inst, elements[pair.first], elements[pair.second], profile);
        const double d = pair.delta->delta;
        const double slack = pair.delta->slack;
        if (pair.sameClass && d > 2.0 * slack) out.assertionsHold = false;
        if (!pair.sameClass && d < 2.0 - 2.0 * slack) out.assertionsHold = false;

        if (!pair.sameClass && inst.graph() && inst.hasCosOracle()) {
          // Bounded double-stabilizer orbit witness over the (n,m) grid.
          const Graph& g = *inst.graph();
          const auto isoA = inst.isometryOf(elements[pair.first]);
          const auto isoB = inst.isometryOf(elements[pair.second]);
          if (isoA && isoB) {
            const Vertex v0 = g.basepoint();
            BigInt worst = 0;
            for (std::int64_t n = 1; n <= profile.powerBound; ++n) {
              for (std::int64_t m = 1; m <= profile.powerBound; ++m) {
                const Vertex an = applyPower(**isoA, n, v0);
                const Vertex bm = applyPower(**isoB, m, v0);
                if (an == bm) continue;  // degenerate pair
                const CosHandle both = CosHandle::stabilizer(inst.id(), {an, bm});
                const CosHandle target = CosHandle::stabilizer(inst.id(), {v0});
                const BigInt orbit = inst.index(both, target);
                if (orbit > worst) worst = orbit;
              }
            }
            pair.doubleStabilizerWitness = worst;
          }
        }
      } catch (const Error& e) {
        pair.error = e.what();
      }
      out.pairs.push_back(std::move(pair));
    }
  }
  return out;
}

std::size_t boundaryOrbitProbe(const Instance& inst, const ElemPtr& g,
                               const std::vector<ElemPtr>& conjugators,
                               const TruncationProfile& profile) {
  profile.validate();
  if (const Graph* graph = inst.graph()) {
    const auto iso = inst.isometryOf(g);
    if (iso) {
      // Truncated ends h(omega_-(g)).
      const TruncatedEnd minus = attractingEnd(*graph, InverseIso(*iso), profile);
      std::vector<TruncatedEnd> ends;
      for (const ElemPtr& h : conjugators) {
        const auto isoH = inst.isometryOf(h);
        if (!isoH) fail(Errc::IncompatibleInstances, "conjugator has no graph action");
        TruncatedEnd e;
        e.basepoint = minus.basepoint;
        for (const Vertex& v : minus.orbit) e.orbit.push_back((*isoH)->apply(v));
        ends.push_back(std::move(e));
      }
      std::vector<std::size_t> repIdx;
      for (std::size_t i = 0; i < ends.size(); ++i) {
        bool seen = false;
        for (std::size_t r : repIdx) {
          if (sameEnd(*graph, ends[r], ends[i], profile.endThreshold)) {
            seen = true;
            break;
          }
        }
        if (!seen) repIdx.push_back(i);
      }
      return repIdx.size();
    }
  }
  // Algebraic instances: classes of the conjugated inverses.
  std::vector<ElemPtr> reps;
  for (const ElemPtr& h : conjugators) {
    const ElemPtr conj = inst.invert(conjugateElement(inst, h, g));
    bool seen = false;
    for (const ElemPtr& r : reps) {
      if (asymptotic(inst, r, conj, profile).related) {
        seen = true;
        break;
      }
    }
    if (!seen) reps.push_back(conj);
  }
  return reps.size();
}

}  // namespace dirspace
