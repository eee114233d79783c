#include "dirspace/cos.hpp"

#include <algorithm>

namespace dirspace {

CosHandle CosHandle::stabilizer(std::string instanceId, std::vector<Vertex> vertices) {
  if (vertices.empty()) fail(Errc::InvariantViolation, "stabilizer tuples must be nonempty");
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  CosHandle h;
  h.kind = Kind::Stabilizer;
  h.instanceId = std::move(instanceId);
  h.tuple = std::move(vertices);
  return h;
}

CosHandle CosHandle::algebraic(std::string instanceId, long long n, long long m) {
  CosHandle h;
  h.kind = Kind::Algebraic;
  h.instanceId = std::move(instanceId);
  h.algN = n;
  h.algM = m;
  return h;
}

std::string CosHandle::key() const {
  if (kind == Kind::Stabilizer) {
    std::string s = "stab:";
    for (const Vertex& v : tuple) {
      s += v.code;
      s += ',';
    }
    return s;
  }
  return "alg:U:" + std::to_string(algN) + ":" + std::to_string(algM);
}

nlohmann::json CosHandle::toJson() const {
  if (kind == Kind::Stabilizer) {
    nlohmann::json codes = nlohmann::json::array();
    for (const Vertex& v : tuple) codes.push_back(v.code);
    return nlohmann::json{{"stabilizer", codes}};
  }
  return nlohmann::json{
      {"algebraic", {{"family", "U"}, {"params", {{"n", algN}, {"m", algM}}}}}};
}

CosHandle CosHandle::fromJson(const std::string& instanceId, const nlohmann::json& spec) {
  if (spec.is_object() && spec.contains("stabilizer")) {
    std::vector<Vertex> tuple;
    for (const auto& c : spec.at("stabilizer")) {
      if (!c.is_string()) fail(Errc::ParseError, "stabilizer tuple entries must be strings");
      tuple.push_back(Vertex{c.get<std::string>()});
    }
    return stabilizer(instanceId, std::move(tuple));
  }
  if (spec.is_object() && spec.contains("algebraic")) {
    const auto& alg = spec.at("algebraic");
    if (alg.value("family", "") != "U")
      fail(Errc::ParseError, "unknown algebraic subgroup family");
    const auto& params = alg.at("params");
    return algebraic(instanceId, params.at("n").get<long long>(),
                     params.at("m").get<long long>());
  }
  fail(Errc::ParseError, "COS handle needs \"stabilizer\" or \"algebraic\"");
}

CosDistance cosDistance(const Instance& inst, const CosHandle& u, const CosHandle& v) {
  CosDistance d;
  d.forward = inst.index(u, v);
  d.backward = inst.index(v, u);
  d.product = d.forward * d.backward;
  d.log = logBig(d.product);
  return d;
}

Displacement displacement(const Instance& inst, const ElemPtr& e, const CosHandle& u) {
  Displacement out;
  out.moved = inst.conjugateHandle(e, u);
  out.forward = inst.index(out.moved, u);
  out.backward = inst.index(u, out.moved);
  out.product = out.forward * out.backward;
  return out;
}

const char* scaleMethodName(ScaleMethod m) {
  switch (m) {
    case ScaleMethod::ClosedForm: return "ClosedForm";
    case ScaleMethod::LimitFormula: return "LimitFormula";
    case ScaleMethod::TidySearch: return "TidySearch";
  }
  return "?";
}

ScaleEstimate scaleEstimate(const Instance& inst, const ElemPtr& e,
                            const TruncationProfile& profile) {
  profile.validate();
  if (!inst.hasCosOracle())
    fail(Errc::Unsupported, "instance " + inst.id() + " has no COS oracle");

  ScaleEstimate out;
  out.window = profile.powerBound;

  const auto candidates = inst.scaleCandidates(e, profile);
  std::optional<BigInt> best;
  for (const CosHandle& u : candidates) {
    const CosHandle moved = inst.conjugateHandle(e, u);
    const BigInt oneStep = inst.index(moved, u);
    if (!best || oneStep < *best) {
      best = oneStep;
      out.minimizer = u;
    }
  }

  if (auto closed = inst.closedFormScale(e)) {
    out.method = ScaleMethod::ClosedForm;
    out.value = *closed;
    if (best && *best < out.value)
      fail(Errc::InvariantViolation, "candidate family beats the closed-form scale");
  } else {
    if (!best) fail(Errc::HorizonTooSmall, "no scale candidates for " + e->label());
    out.method = ScaleMethod::TidySearch;
    out.value = *best;
    out.familyRelative = true;
  }

  // Limit-formula cross-check: n-th roots of [e^n(U) : e^n(U) cap U] for the
  // minimizing base handle.
  if (out.minimizer) {
    const CosHandle base = *out.minimizer;
    CosHandle moved = base;
    for (std::int64_t n = 1; n <= profile.powerBound; ++n) {
      moved = inst.conjugateHandle(e, moved);
      const BigInt idx = inst.index(moved, base);
      out.iterates.push_back(std::exp(logBig(idx) / static_cast<double>(n)));
    }
    if (!out.iterates.empty()) out.limitValue = out.iterates.back();
  }
  return out;
}

bool tidyDisplacementCheck(const Instance& inst, const ElemPtr& e, const CosHandle& u,
                           const std::vector<CosHandle>& candidates,
                           const TruncationProfile& profile) {
  const Displacement mine = displacement(inst, e, u);
  for (const CosHandle& v : candidates) {
    if (displacement(inst, e, v).product < mine.product) return false;
  }
  // Attaining the family minimum: cross-check against the scale identity
  // d(alpha(U), U) = log s(alpha) + log s(alpha^-1).
  const BigInt expected =
      scaleEstimate(inst, e, profile).value * scaleEstimate(inst, inst.invert(e), profile).value;
  if (mine.product != expected)
    fail(Errc::InvariantViolation,
         "minimal displacement " + decimal(mine.product) + " does not match s(a)*s(a^-1) = " +
             decimal(expected) + " over this candidate family");
  return true;
}

bool tidyAboveCheck(const Instance& inst, const ElemPtr& e, const CosHandle& u, int depth) {
  if (depth < 1) fail(Errc::DepthInfeasible, "tidy-above depth must be positive");
  return inst.tidyAbove(e, u, depth);
}

TriBool tidyBelowCheck(const Instance& inst, const ElemPtr& e, const CosHandle& u) {
  return inst.tidyBelow(e, u);
}

}  // namespace dirspace
