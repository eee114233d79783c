#include "dirspace/instances.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>

#include "dirspace/classify.hpp"
#include "dirspace/tree_ball.hpp"

namespace dirspace {

const char* triBoolName(TriBool t) {
  switch (t) {
    case TriBool::True: return "true";
    case TriBool::False: return "false";
    case TriBool::NotDecidable: return "NotDecidable";
  }
  return "?";
}

ElemPtr elementPower(const Instance& inst, const ElemPtr& e, std::int64_t k) {
  if (k == 0) return inst.identityElement();
  if (k < 0) return elementPower(inst, inst.invert(e), -k);
  ElemPtr acc = e;
  for (std::int64_t i = 1; i < k; ++i) acc = inst.multiply(acc, e);
  return acc;
}

ElemPtr conjugateElement(const Instance& inst, const ElemPtr& h, const ElemPtr& g) {
  return inst.multiply(inst.multiply(h, g), inst.invert(h));
}

BigInt Instance::index(const CosHandle&, const CosHandle&) const {
  fail(Errc::Unsupported, "instance " + id() + " has no COS oracle");
}
CosHandle Instance::conjugateHandle(const ElemPtr&, const CosHandle&) const {
  fail(Errc::Unsupported, "instance " + id() + " has no COS oracle");
}
std::vector<CosHandle> Instance::scaleCandidates(const ElemPtr&, const TruncationProfile&) const {
  fail(Errc::Unsupported, "instance " + id() + " has no COS oracle");
}
CosHandle Instance::defaultBaseHandle(const ElemPtr&, const TruncationProfile&) const {
  fail(Errc::Unsupported, "instance " + id() + " has no COS oracle");
}
CosHandle Instance::parseHandle(const nlohmann::json&) const {
  fail(Errc::Unsupported, "instance " + id() + " has no COS oracle");
}
bool Instance::tidyAbove(const ElemPtr&, const CosHandle&, int) const {
  fail(Errc::Unsupported, "instance " + id() + " has no COS oracle");
}
TriBool Instance::tidyBelow(const ElemPtr&, const CosHandle&) const {
  fail(Errc::Unsupported, "instance " + id() + " has no COS oracle");
}

namespace {

void requireSameInstance(const Instance& inst, const CosHandle& h) {
  if (h.instanceId != inst.id())
    fail(Errc::IncompatibleInstances,
         "handle belongs to " + h.instanceId + ", not " + inst.id());
}

nlohmann::json parseJsonText(const std::string& text, const std::string& what) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::ParseError, "invalid JSON " + what + ": " + e.what());
  }
}

std::vector<std::string> splitSpec(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    if (pos == std::string::npos) {
      parts.push_back(s.substr(start));
      break;
    }
    parts.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
  return parts;
}

}  // namespace

// --------------------------------------------------------------------------
// TreeInstance

namespace {

class TreeElement final : public GroupElement {
 public:
  explicit TreeElement(IsoPtr iso) : iso_(std::move(iso)) {}
  std::string label() const override { return iso_->label(); }
  const IsoPtr& iso() const { return iso_; }

 private:
  IsoPtr iso_;
};

const TreeElement& asTreeElement(const ElemPtr& e) {
  const auto* t = dynamic_cast<const TreeElement*>(e.get());
  if (!t) fail(Errc::IncompatibleInstances, "element does not belong to a tree instance");
  return *t;
}

}  // namespace

TreeInstance::TreeInstance(int degree, std::string id) : tree_(degree), id_(std::move(id)) {}

double TreeInstance::indexSlackConstant() const {
  const double q = tree_.degree() - 1;
  return (q + 1.0) / q;
}

ElemPtr TreeInstance::elementOf(IsoPtr iso) const {
  return std::make_shared<TreeElement>(std::move(iso));
}

ElemPtr TreeInstance::identityElement() const { return elementOf(identityIso()); }

ElemPtr TreeInstance::multiply(const ElemPtr& a, const ElemPtr& b) const {
  return elementOf(composeIso(asTreeElement(a).iso(), asTreeElement(b).iso()));
}

ElemPtr TreeInstance::invert(const ElemPtr& a) const {
  return elementOf(inverseOf(asTreeElement(a).iso()));
}

std::optional<IsoPtr> TreeInstance::isometryOf(const ElemPtr& e) const {
  return asTreeElement(e).iso();
}

ElemPtr TreeInstance::elementFromJson(const nlohmann::json& spec) const {
  if (!spec.is_object() || !spec.contains("kind"))
    fail(Errc::ParseError, "tree isometry descriptor needs a \"kind\"");
  const std::string kind = spec.at("kind").get<std::string>();
  if (kind == "identity") return identityElement();
  if (kind == "translation") {
    return elementOf(treeTranslation(tree_, spec.at("axis_code").get<std::string>(),
                                     spec.at("step").get<std::int64_t>()));
  }
  if (kind == "rotation") {
    return elementOf(treeRotation(
        tree_, spec.at("fixed").get<std::string>(),
        ColorPerm::fromString(spec.at("local_perm").get<std::string>(), tree_.degree())));
  }
  if (kind == "twist") {
    return elementOf(treeTwist(
        tree_, spec.at("at").get<std::string>(),
        ColorPerm::fromString(spec.at("perm").get<std::string>(), tree_.degree())));
  }
  if (kind == "compose") {
    ElemPtr acc = identityElement();
    for (const auto& part : spec.at("of")) acc = multiply(acc, elementFromJson(part));
    return acc;
  }
  if (kind == "inverse") return invert(elementFromJson(spec.at("of")));
  if (kind == "power")
    return elementPower(*this, elementFromJson(spec.at("of")), spec.at("k").get<std::int64_t>());
  fail(Errc::ParseError, "unknown tree isometry kind \"" + kind + "\"");
}

ElemPtr TreeInstance::parseElement(const std::string& spec) const {
  if (!spec.empty() && spec.front() == '{')
    return elementFromJson(parseJsonText(spec, "isometry descriptor"));
  if (spec == "identity") return identityElement();
  const auto parts = splitSpec(spec, ':');
  if (parts[0] == "shift" && parts.size() == 2) {
    const auto at = splitSpec(parts[1], '@');
    const std::int64_t step = std::stoll(at[0]);
    const std::string axis = at.size() > 1 ? at[1] : "01";
    return elementOf(treeTranslation(tree_, axis, step));
  }
  if (parts[0] == "rot" && parts.size() == 3) {
    return elementOf(treeRotation(tree_, parts[1], ColorPerm::fromString(parts[2], tree_.degree())));
  }
  if (parts[0] == "twist" && parts.size() == 3) {
    return elementOf(treeTwist(tree_, parts[1], ColorPerm::fromString(parts[2], tree_.degree())));
  }
  fail(Errc::ParseError, "unknown tree isometry \"" + spec + "\"");
}

BigInt TreeInstance::tupleOrbitCount(const std::vector<Vertex>& fixed,
                                     const std::vector<Vertex>& moved) const {
  // Convex hull of a code set: union of pairwise paths through the longest
  // common prefixes. Hulls are subtrees; edges are (code, parent-code).
  const auto hullOf = [&](const std::vector<Vertex>& pts) {
    std::set<std::string> hull;
    for (const Vertex& v : pts) hull.insert(v.code);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      for (std::size_t j = i + 1; j < pts.size(); ++j) {
        const std::string& a = pts[i].code;
        const std::string& b = pts[j].code;
        std::size_t lcp = 0;
        while (lcp < a.size() && lcp < b.size() && a[lcp] == b[lcp]) ++lcp;
        for (std::size_t cut = lcp; cut <= a.size(); ++cut) hull.insert(a.substr(0, cut));
        for (std::size_t cut = lcp; cut <= b.size(); ++cut) hull.insert(b.substr(0, cut));
      }
    }
    return hull;
  };

  const std::set<std::string> hullA = hullOf(fixed);
  std::vector<Vertex> all = fixed;
  all.insert(all.end(), moved.begin(), moved.end());
  const std::set<std::string> hullAB = hullOf(all);

  // Adjacency inside hullAB is the parent relation on codes.
  const auto parentOf = [](const std::string& c) { return c.substr(0, c.size() - 1); };
  std::map<std::string, int> placedNeighbors;  // neighbors already pinned, per vertex
  for (const std::string& c : hullAB) placedNeighbors[c] = 0;
  for (const std::string& c : hullA) {
    if (!c.empty() && hullA.count(parentOf(c))) {
      placedNeighbors[c] += 1;
      placedNeighbors[parentOf(c)] += 1;
    }
  }

  // BFS layers of hullAB \ hullA away from hullA, deterministic order.
  std::set<std::string> placed(hullA.begin(), hullA.end());
  std::vector<std::string> frontier(hullA.begin(), hullA.end());
  BigInt count = 1;
  const int degree = tree_.degree();
  while (!frontier.empty()) {
    std::vector<std::string> next;
    for (const std::string& p : frontier) {
      // Children in hullAB plus the parent edge, any not yet placed.
      std::vector<std::string> grow;
      if (!p.empty() && hullAB.count(parentOf(p)) && !placed.count(parentOf(p)))
        grow.push_back(parentOf(p));
      for (const std::string& c : hullAB) {
        if (c.size() == p.size() + 1 && parentOf(c) == p && !placed.count(c)) grow.push_back(c);
      }
      std::sort(grow.begin(), grow.end());
      for (const std::string& v : grow) {
        if (placed.count(v)) continue;
        count *= degree - placedNeighbors[p];
        placedNeighbors[p] += 1;
        placedNeighbors[v] += 1;
        placed.insert(v);
        next.push_back(v);
      }
    }
    frontier = std::move(next);
  }
  return count;
}

BigInt TreeInstance::index(const CosHandle& u, const CosHandle& v) const {
  requireSameInstance(*this, u);
  requireSameInstance(*this, v);
  if (u.kind != CosHandle::Kind::Stabilizer || v.kind != CosHandle::Kind::Stabilizer)
    fail(Errc::IncompatibleInstances, "tree instance handles are stabilizer tuples");
  return tupleOrbitCount(u.tuple, v.tuple);
}

CosHandle TreeInstance::conjugateHandle(const ElemPtr& e, const CosHandle& u) const {
  requireSameInstance(*this, u);
  const IsoPtr iso = asTreeElement(e).iso();
  std::vector<Vertex> image;
  image.reserve(u.tuple.size());
  for (const Vertex& v : u.tuple) image.push_back(iso->apply(v));
  return CosHandle::stabilizer(id_, std::move(image));
}

std::vector<CosHandle> TreeInstance::scaleCandidates(const ElemPtr& e,
                                                     const TruncationProfile& profile) const {
  const IsoPtr iso = asTreeElement(e).iso();
  std::vector<CosHandle> out;
  const Vertex root = tree_.basepoint();
  out.push_back(CosHandle::stabilizer(id_, {root}));

  const IsometryClass cls = classify(tree_, *iso, profile);
  if (cls.kind == IsometryKind::Elliptic) {
    // Orbit-closure tuple: stabilized setwise, so the one-step index is 1.
    std::vector<Vertex> orbit;
    Vertex cur = *cls.witness;
    for (std::int64_t k = 0; k < cls.orbitPeriod; ++k) {
      orbit.push_back(cur);
      cur = iso->apply(cur);
    }
    out.push_back(CosHandle::stabilizer(id_, orbit));
    out.push_back(CosHandle::stabilizer(id_, {*cls.witness}));
  } else if (cls.kind == IsometryKind::Hyperbolic) {
    const AxisWindow axis = findAxis(tree_, *iso, profile);
    const std::size_t c = static_cast<std::size_t>(axis.center);
    out.push_back(CosHandle::stabilizer(id_, {axis.vertices[c]}));
    out.push_back(CosHandle::stabilizer(id_, {axis.vertices[c], axis.vertices[c + 1]}));
    out.push_back(
        CosHandle::stabilizer(id_, {axis.vertices[c - 1], axis.vertices[c], axis.vertices[c + 1]}));
  }
  // Deduplicate, preserving order.
  std::vector<CosHandle> unique;
  for (auto& h : out) {
    if (std::find(unique.begin(), unique.end(), h) == unique.end()) unique.push_back(h);
  }
  return unique;
}

CosHandle TreeInstance::defaultBaseHandle(const ElemPtr& e, const TruncationProfile& profile) const {
  const IsoPtr iso = asTreeElement(e).iso();
  const IsometryClass cls = classify(tree_, *iso, profile);
  if (cls.kind == IsometryKind::Hyperbolic)
    return CosHandle::stabilizer(id_, {*cls.witness});
  if (cls.kind == IsometryKind::Elliptic) {
    std::vector<Vertex> orbit;
    Vertex cur = *cls.witness;
    for (std::int64_t k = 0; k < cls.orbitPeriod; ++k) {
      orbit.push_back(cur);
      cur = iso->apply(cur);
    }
    return CosHandle::stabilizer(id_, orbit);
  }
  return CosHandle::stabilizer(id_, {tree_.basepoint()});
}

CosHandle TreeInstance::parseHandle(const nlohmann::json& spec) const {
  CosHandle h = CosHandle::fromJson(id_, spec);
  if (h.kind != CosHandle::Kind::Stabilizer)
    fail(Errc::IncompatibleInstances, "tree instance handles are stabilizer tuples");
  for (const Vertex& v : h.tuple) {
    if (!tree_.validCode(v.code))
      fail(Errc::InvariantViolation, "tuple vertex " + v.code + " is not a tree code");
  }
  return h;
}

bool TreeInstance::tidyAbove(const ElemPtr& e, const CosHandle& u, int depth) const {
  requireSameInstance(*this, u);
  const int radius = 3;
  for (const Vertex& v : u.tuple) {
    if (static_cast<int>(v.code.size()) > radius)
      fail(Errc::DepthInfeasible, "tuple leaves the radius-3 quotient ball");
  }
  const TreeBall ball(tree_, radius);

  // Vertex sets to fix: images of the tuple under e^k, clipped to the ball.
  const auto clippedImages = [&](std::int64_t lo, std::int64_t hi) {
    std::vector<Vertex> pts;
    for (std::int64_t k = lo; k <= hi; ++k) {
      ElemPtr ek = elementPower(*this, e, k);
      for (const Vertex& v : conjugateHandle(ek, u).tuple) {
        if (static_cast<int>(v.code.size()) <= radius) pts.push_back(v);
      }
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
  };

  const auto sU = ball.pointwiseStabilizer(u.tuple);
  const auto sPlus = ball.pointwiseStabilizer(clippedImages(0, depth));
  const auto sMinus = ball.pointwiseStabilizer(clippedImages(-depth, 0));

  if (static_cast<double>(sPlus.size()) * static_cast<double>(sMinus.size()) > 4e6)
    fail(Errc::DepthInfeasible, "factorization search too large at this depth");

  std::set<std::vector<int>> products;
  const auto& autos = ball.automorphisms();
  for (int a : sPlus) {
    for (int b : sMinus) {
      products.insert(ball.compose(autos[static_cast<std::size_t>(a)],
                                   autos[static_cast<std::size_t>(b)]));
    }
  }
  for (int a : sU) {
    if (!products.count(autos[static_cast<std::size_t>(a)])) return false;
  }
  return true;
}

TriBool TreeInstance::tidyBelow(const ElemPtr&, const CosHandle&) const {
  return TriBool::NotDecidable;
}

// --------------------------------------------------------------------------
// ExampleInstance

namespace {

class ExampleElem final : public GroupElement {
 public:
  explicit ExampleElem(ExampleElement e) : e_(std::move(e)) {}
  std::string label() const override { return e_.label(); }
  const ExampleElement& raw() const { return e_; }

 private:
  ExampleElement e_;
};

const ExampleElem& asExampleElem(const ElemPtr& e) {
  const auto* x = dynamic_cast<const ExampleElem*>(e.get());
  if (!x) fail(Errc::IncompatibleInstances, "element does not belong to the example instance");
  return *x;
}

}  // namespace

ExampleInstance::ExampleInstance(int order, std::string id) : group_(order), id_(std::move(id)) {}

ElemPtr ExampleInstance::elementOf(ExampleElement e) const {
  return std::make_shared<ExampleElem>(std::move(e));
}

ElemPtr ExampleInstance::identityElement() const { return elementOf(group_.identity()); }

ElemPtr ExampleInstance::multiply(const ElemPtr& a, const ElemPtr& b) const {
  return elementOf(group_.multiply(asExampleElem(a).raw(), asExampleElem(b).raw()));
}

ElemPtr ExampleInstance::invert(const ElemPtr& a) const {
  return elementOf(group_.inverse(asExampleElem(a).raw()));
}

const ExampleElement& ExampleInstance::raw(const ElemPtr& e) const {
  return asExampleElem(e).raw();
}

ElemPtr ExampleInstance::elementFromJson(const nlohmann::json& spec) const {
  ExampleElement e;
  e.shift = spec.value("n", 0LL);
  const auto loadPart = [&](const char* keyName, std::map<long long, int>& into) {
    if (!spec.contains(keyName)) return;
    for (const auto& [pos, val] : spec.at(keyName).items()) {
      const int v = val.get<int>() % group_.order();
      if (v != 0) into[std::stoll(pos)] = v;
    }
  };
  loadPart("g0", e.g0);
  loadPart("g1", e.g1);
  return elementOf(std::move(e));
}

ElemPtr ExampleInstance::parseElement(const std::string& spec) const {
  if (!spec.empty() && spec.front() == '{')
    return elementFromJson(parseJsonText(spec, "element descriptor"));
  if (spec == "identity") return identityElement();
  if (spec == "a") return elementOf(group_.alphaPower(1));
  if (spec == "a-inverse") return elementOf(group_.alphaPower(-1));
  const auto parts = splitSpec(spec, ':');
  if (parts[0] == "alpha" && parts.size() == 2)
    return elementOf(group_.alphaPower(std::stoll(parts[1])));
  fail(Errc::ParseError, "unknown example-group element \"" + spec + "\"");
}

ExampleSubgroup ExampleInstance::asSubgroup(const CosHandle& u) const {
  requireSameInstance(*this, u);
  if (u.kind != CosHandle::Kind::Algebraic)
    fail(Errc::IncompatibleInstances, "example-group handles are algebraic");
  return ExampleSubgroup{u.algN, u.algM};
}

BigInt ExampleInstance::index(const CosHandle& u, const CosHandle& v) const {
  return group_.index(asSubgroup(u), asSubgroup(v));
}

CosHandle ExampleInstance::conjugateHandle(const ElemPtr& e, const CosHandle& u) const {
  const ExampleSubgroup s = group_.conjugate(asExampleElem(e).raw(), asSubgroup(u));
  return CosHandle::algebraic(id_, s.n, s.m);
}

std::vector<CosHandle> ExampleInstance::scaleCandidates(const ElemPtr&,
                                                        const TruncationProfile&) const {
  std::vector<CosHandle> out;
  for (long long n = -1; n <= 1; ++n)
    for (long long m = -1; m <= 1; ++m) out.push_back(CosHandle::algebraic(id_, n, m));
  return out;
}

std::optional<BigInt> ExampleInstance::closedFormScale(const ElemPtr& e) const {
  return group_.scale(asExampleElem(e).raw());
}

std::optional<bool> ExampleInstance::handleIncludes(const CosHandle& u, const CosHandle& v) const {
  return group_.includes(asSubgroup(u), asSubgroup(v));
}

CosHandle ExampleInstance::defaultBaseHandle(const ElemPtr&, const TruncationProfile&) const {
  return CosHandle::algebraic(id_, 0, 0);
}

CosHandle ExampleInstance::parseHandle(const nlohmann::json& spec) const {
  CosHandle h = CosHandle::fromJson(id_, spec);
  if (h.kind != CosHandle::Kind::Algebraic)
    fail(Errc::IncompatibleInstances, "example-group handles are algebraic");
  return h;
}

bool ExampleInstance::tidyAbove(const ElemPtr& e, const CosHandle& u, int depth) const {
  // The support-interval lattice is closed under the intersections involved,
  // so the factorization is decided on cutoffs.
  const ExampleSubgroup base = asSubgroup(u);
  const long long n = asExampleElem(e).raw().shift;
  long long plusN = base.n, plusM = base.m;
  long long minusN = base.n, minusM = base.m;
  for (int k = 1; k <= depth; ++k) {
    plusN = std::min(plusN, base.n - k * n);
    plusM = std::min(plusM, base.m + k * n);
    minusN = std::min(minusN, base.n + k * n);
    minusM = std::min(minusM, base.m - k * n);
  }
  // U+ U- has componentwise max cutoffs.
  return std::max(plusN, minusN) == base.n && std::max(plusM, minusM) == base.m;
}

TriBool ExampleInstance::tidyBelow(const ElemPtr&, const CosHandle&) const {
  // U-- is a full restricted product in the contracting coordinate and a
  // fixed support interval in the other; both are closed subgroups.
  return TriBool::True;
}

// --------------------------------------------------------------------------
// CosetInstance

namespace {

class CosetElem final : public GroupElement {
 public:
  explicit CosetElem(Perm p) : p_(std::move(p)) {}
  std::string label() const override { return "perm:" + permCode(p_); }
  const Perm& raw() const { return p_; }

 private:
  Perm p_;
};

const CosetElem& asCosetElem(const ElemPtr& e) {
  const auto* x = dynamic_cast<const CosetElem*>(e.get());
  if (!x) fail(Errc::IncompatibleInstances, "element does not belong to a coset instance");
  return *x;
}

}  // namespace

CosetInstance::CosetInstance(int degree, std::vector<Perm> groupGens,
                             std::vector<Perm> subgroupGens, std::vector<Perm> connectors,
                             std::string id)
    : degree_(degree), connectors_(std::move(connectors)), id_(std::move(id)) {
  elements_ = permClosure(groupGens, degree);
  subgroup_ = permClosure(subgroupGens, degree);
  const std::set<Perm> elementSet(elements_.begin(), elements_.end());
  for (const Perm& u : subgroup_) {
    if (!elementSet.count(u)) fail(Errc::InvariantViolation, "subgroup leaves the group");
  }
  for (const Perm& s : connectors_) {
    if (!elementSet.count(s)) fail(Errc::InvariantViolation, "generator leaves the group");
    if (std::find(connectors_.begin(), connectors_.end(), inversePerm(s)) == connectors_.end())
      fail(Errc::NotSymmetricGenerators, "generator set is not closed under inverses");
  }

  // Cosets gU keyed by their minimal element.
  std::map<Perm, std::vector<Perm>> cosets;  // min element -> members
  for (const Perm& g : elements_) {
    Perm rep = g;
    std::vector<Perm> members;
    for (const Perm& u : subgroup_) {
      Perm gu = composePerm(g, u);
      if (gu < rep) rep = gu;
      members.push_back(std::move(gu));
    }
    cosets.emplace(std::move(rep), std::move(members));
  }

  std::vector<std::string> codes;
  for (const auto& [rep, members] : cosets) {
    codes.push_back(permCode(rep));
    reps_.emplace(permCode(rep), rep);
  }
  const auto cosetCode = [&](const Perm& g) {
    Perm rep = g;
    for (const Perm& u : subgroup_) {
      Perm gu = composePerm(g, u);
      if (gu < rep) rep = gu;
    }
    return permCode(rep);
  };
  std::set<std::pair<std::string, std::string>> edges;
  for (const Perm& g : elements_) {
    const std::string from = cosetCode(g);
    for (const Perm& s : connectors_) {
      const std::string to = cosetCode(composePerm(g, s));
      if (from == to) continue;  // diagonal-free edge set
      edges.emplace(std::min(from, to), std::max(from, to));
    }
  }
  std::vector<std::pair<std::string, std::string>> edgeList(edges.begin(), edges.end());
  graph_ = std::make_shared<FiniteGraph>(codes, edgeList);

  // Connectivity = S together with U generates G.
  const auto reached = ballVertices(*graph_, graph_->basepoint(),
                                    static_cast<std::int64_t>(codes.size()) + 1);
  connected_ = reached.size() == codes.size();
}

Vertex CosetInstance::cosetVertex(const Perm& g) const {
  Perm rep = g;
  for (const Perm& u : subgroup_) {
    Perm gu = composePerm(g, u);
    if (gu < rep) rep = gu;
  }
  return Vertex{permCode(rep)};
}

Perm CosetInstance::repOf(const Vertex& v) const {
  auto it = reps_.find(v.code);
  if (it == reps_.end()) fail(Errc::InvariantViolation, "unknown coset vertex " + v.code);
  return it->second;
}

ElemPtr CosetInstance::elementOf(Perm p) const {
  if (static_cast<int>(p.size()) != degree_ || !isPerm(p))
    fail(Errc::ParseError, "element is not a permutation of degree " + std::to_string(degree_));
  if (std::find(elements_.begin(), elements_.end(), p) == elements_.end())
    fail(Errc::IncompatibleInstances, "permutation is not a group member");
  return std::make_shared<CosetElem>(std::move(p));
}

ElemPtr CosetInstance::identityElement() const { return elementOf(identityPerm(degree_)); }

ElemPtr CosetInstance::multiply(const ElemPtr& a, const ElemPtr& b) const {
  return elementOf(composePerm(asCosetElem(a).raw(), asCosetElem(b).raw()));
}

ElemPtr CosetInstance::invert(const ElemPtr& a) const {
  return elementOf(inversePerm(asCosetElem(a).raw()));
}

ElemPtr CosetInstance::parseElement(const std::string& spec) const {
  if (spec == "identity") return identityElement();
  if (!spec.empty() && spec.front() == '{') {
    const auto j = parseJsonText(spec, "element descriptor");
    return elementOf(j.at("perm").get<Perm>());
  }
  const auto parts = splitSpec(spec, ':');
  if (parts[0] == "perm" && parts.size() == 2) {
    Perm p;
    for (const auto& tok : splitSpec(parts[1], ',')) p.push_back(std::stoi(tok));
    return elementOf(std::move(p));
  }
  fail(Errc::ParseError, "unknown coset-instance element \"" + spec + "\"");
}

std::optional<IsoPtr> CosetInstance::isometryOf(const ElemPtr& e) const {
  const Perm& x = asCosetElem(e).raw();
  std::unordered_map<Vertex, Vertex> forward;
  for (const auto& [code, rep] : reps_) {
    forward.emplace(Vertex{code}, cosetVertex(composePerm(x, rep)));
  }
  return IsoPtr(std::make_shared<PermutationIso>(std::move(forward), "left-mult:" + permCode(x)));
}

std::vector<Perm> CosetInstance::stabilizerElements(const std::vector<Vertex>& tuple) const {
  std::vector<Perm> out;
  for (const Perm& x : elements_) {
    bool fixes = true;
    for (const Vertex& v : tuple) {
      if (cosetVertex(composePerm(x, repOf(v))) != v) {
        fixes = false;
        break;
      }
    }
    if (fixes) out.push_back(x);
  }
  return out;
}

BigInt CosetInstance::index(const CosHandle& u, const CosHandle& v) const {
  requireSameInstance(*this, u);
  requireSameInstance(*this, v);
  const auto a = stabilizerElements(u.tuple);
  const auto b = stabilizerElements(v.tuple);
  const std::set<Perm> bSet(b.begin(), b.end());
  std::size_t both = 0;
  for (const Perm& x : a)
    if (bSet.count(x)) ++both;
  return BigInt(a.size() / both);
}

CosHandle CosetInstance::conjugateHandle(const ElemPtr& e, const CosHandle& u) const {
  requireSameInstance(*this, u);
  const Perm& x = asCosetElem(e).raw();
  std::vector<Vertex> image;
  for (const Vertex& v : u.tuple) image.push_back(cosetVertex(composePerm(x, repOf(v))));
  return CosHandle::stabilizer(id_, std::move(image));
}

std::vector<CosHandle> CosetInstance::scaleCandidates(const ElemPtr& e,
                                                      const TruncationProfile&) const {
  std::vector<CosHandle> out;
  const Vertex base = graph_->basepoint();
  out.push_back(CosHandle::stabilizer(id_, {base}));
  // Orbit closure of the basepoint under the element: setwise invariant.
  std::vector<Vertex> orbit;
  Vertex cur = base;
  const Perm& x = asCosetElem(e).raw();
  for (std::size_t k = 0; k <= elements_.size(); ++k) {
    orbit.push_back(cur);
    cur = cosetVertex(composePerm(x, repOf(cur)));
    if (cur == base) break;
  }
  out.push_back(CosHandle::stabilizer(id_, orbit));
  // The whole vertex set: stabilizer is the action kernel.
  out.push_back(CosHandle::stabilizer(id_, graph_->vertices()));
  std::vector<CosHandle> unique;
  for (auto& h : out) {
    if (std::find(unique.begin(), unique.end(), h) == unique.end()) unique.push_back(h);
  }
  return unique;
}

CosHandle CosetInstance::defaultBaseHandle(const ElemPtr& e, const TruncationProfile& p) const {
  return scaleCandidates(e, p).back();
}

CosHandle CosetInstance::parseHandle(const nlohmann::json& spec) const {
  CosHandle h = CosHandle::fromJson(id_, spec);
  if (h.kind != CosHandle::Kind::Stabilizer)
    fail(Errc::IncompatibleInstances, "coset-instance handles are stabilizer tuples");
  for (const Vertex& v : h.tuple) repOf(v);
  return h;
}

bool CosetInstance::tidyAbove(const ElemPtr& e, const CosHandle& u, int depth) const {
  const auto uElems = stabilizerElements(u.tuple);
  const Perm& x = asCosetElem(e).raw();
  const auto conjSet = [&](const std::vector<Perm>& set, int k) {
    Perm xk = identityPerm(degree_);
    for (int i = 0; i < std::abs(k); ++i)
      xk = composePerm(xk, k > 0 ? x : inversePerm(x));
    const Perm xkInv = inversePerm(xk);
    std::set<Perm> out;
    for (const Perm& g : set) out.insert(composePerm(composePerm(xk, g), xkInv));
    return out;
  };
  std::set<Perm> plus(uElems.begin(), uElems.end());
  std::set<Perm> minus(uElems.begin(), uElems.end());
  for (int k = 1; k <= depth; ++k) {
    const auto pk = conjSet(uElems, k);
    const auto mk = conjSet(uElems, -k);
    std::set<Perm> nextPlus, nextMinus;
    for (const Perm& g : plus)
      if (pk.count(g)) nextPlus.insert(g);
    for (const Perm& g : minus)
      if (mk.count(g)) nextMinus.insert(g);
    plus = std::move(nextPlus);
    minus = std::move(nextMinus);
  }
  std::set<Perm> products;
  for (const Perm& a : plus)
    for (const Perm& b : minus) products.insert(composePerm(a, b));
  for (const Perm& g : uElems)
    if (!products.count(g)) return false;
  return true;
}

TriBool CosetInstance::tidyBelow(const ElemPtr&, const CosHandle&) const {
  return TriBool::True;  // finite groups: every subgroup is closed
}

// --------------------------------------------------------------------------
// GraphOnlyInstance

namespace {

class GraphElem final : public GroupElement {
 public:
  explicit GraphElem(IsoPtr iso) : iso_(std::move(iso)) {}
  std::string label() const override { return iso_->label(); }
  const IsoPtr& iso() const { return iso_; }

 private:
  IsoPtr iso_;
};

const GraphElem& asGraphElem(const ElemPtr& e) {
  const auto* x = dynamic_cast<const GraphElem*>(e.get());
  if (!x) fail(Errc::IncompatibleInstances, "element does not belong to a graph instance");
  return *x;
}

}  // namespace

GraphOnlyInstance::GraphOnlyInstance(std::shared_ptr<const Graph> g, std::string id,
                                     std::string kind)
    : graph_(std::move(g)), id_(std::move(id)), kind_(std::move(kind)) {}

ElemPtr GraphOnlyInstance::elementOf(IsoPtr iso) const {
  return std::make_shared<GraphElem>(std::move(iso));
}

ElemPtr GraphOnlyInstance::identityElement() const { return elementOf(identityIso()); }

ElemPtr GraphOnlyInstance::multiply(const ElemPtr& a, const ElemPtr& b) const {
  return elementOf(composeIso(asGraphElem(a).iso(), asGraphElem(b).iso()));
}

ElemPtr GraphOnlyInstance::invert(const ElemPtr& a) const {
  return elementOf(inverseOf(asGraphElem(a).iso()));
}

std::optional<IsoPtr> GraphOnlyInstance::isometryOf(const ElemPtr& e) const {
  return asGraphElem(e).iso();
}

ElemPtr GraphOnlyInstance::parseElement(const std::string& spec) const {
  if (spec == "identity") return identityElement();
  if (kind_ == "ladder") {
    const auto parts = splitSpec(spec, ':');
    if (parts[0] == "shift" && parts.size() == 2)
      return elementOf(ladderShift(std::stoll(parts[1]), false));
    if (parts[0] == "glide" && parts.size() == 2)
      return elementOf(ladderShift(std::stoll(parts[1]), true));
    if (spec == "reflect") return elementOf(ladderReflection());
    fail(Errc::ParseError, "unknown ladder isometry \"" + spec + "\"");
  }
  if (!spec.empty() && spec.front() == '{') {
    const auto* fg = dynamic_cast<const FiniteGraph*>(graph_.get());
    if (!fg) fail(Errc::ParseError, "permutation isometries need a finite graph");
    return elementOf(fg->permutationFromJson(parseJsonText(spec, "isometry descriptor")));
  }
  fail(Errc::ParseError, "unknown isometry \"" + spec + "\" for instance " + id_);
}

// --------------------------------------------------------------------------
// Instance construction

InstancePtr instanceFromJson(const nlohmann::json& spec, const std::string& id) {
  const std::string kind = spec.value("kind", "");
  if (kind == "tree")
    return std::make_shared<TreeInstance>(spec.at("degree").get<int>(), id);
  if (kind == "example")
    return std::make_shared<ExampleInstance>(spec.at("order").get<int>(), id);
  if (kind == "ladder")
    return std::make_shared<GraphOnlyInstance>(std::make_shared<LadderGraph>(), id, "ladder");
  if (kind == "coset") {
    return std::make_shared<CosetInstance>(
        spec.at("degree").get<int>(), spec.at("group").get<std::vector<Perm>>(),
        spec.at("subgroup").get<std::vector<Perm>>(), spec.at("gens").get<std::vector<Perm>>(), id);
  }
  if (kind == "file") {
    const std::string path = spec.at("path").get<std::string>();
    return std::make_shared<GraphOnlyInstance>(
        std::make_shared<FiniteGraph>(FiniteGraph::fromFile(path)), id, "file");
  }
  fail(Errc::ParseError, "unknown instance kind \"" + kind + "\"");
}

InstancePtr makeInstance(const std::string& spec) {
  if (!spec.empty() && spec.front() == '{')
    return instanceFromJson(parseJsonText(spec, "instance descriptor"), spec);
  const auto parts = splitSpec(spec, ':');
  if (parts[0] == "tree" && parts.size() == 2)
    return std::make_shared<TreeInstance>(std::stoi(parts[1]), spec);
  if (parts[0] == "example" && parts.size() == 2)
    return std::make_shared<ExampleInstance>(std::stoi(parts[1]), spec);
  if (spec == "ladder")
    return std::make_shared<GraphOnlyInstance>(std::make_shared<LadderGraph>(), spec, "ladder");
  if (spec.size() > 5 && spec.substr(spec.size() - 5) == ".json") {
    std::ifstream in(spec);
    if (!in) fail(Errc::ParseError, "cannot open instance file " + spec);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      fail(Errc::ParseError, std::string("invalid JSON in ") + spec + ": " + e.what());
    }
    if (j.contains("kind")) return instanceFromJson(j, spec);
    return std::make_shared<GraphOnlyInstance>(
        std::make_shared<FiniteGraph>(FiniteGraph::fromJson(j)), spec, "file");
  }
  fail(Errc::ParseError, "unknown instance \"" + spec + "\"");
}

ElemPtr loadElement(const Instance& inst, const std::string& pathOrSpec) {
  if (!pathOrSpec.empty() && pathOrSpec.front() == '{') return inst.parseElement(pathOrSpec);
  if (pathOrSpec.size() > 5 && pathOrSpec.substr(pathOrSpec.size() - 5) == ".json") {
    std::ifstream in(pathOrSpec);
    if (!in) fail(Errc::ParseError, "cannot open isometry file " + pathOrSpec);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return inst.parseElement(text);
  }
  return inst.parseElement(pathOrSpec);
}

}  // namespace dirspace
