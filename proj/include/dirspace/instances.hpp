#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dirspace/bigint.hpp"
#include "dirspace/cos_handle.hpp"
#include "dirspace/example_group.hpp"
#include "dirspace/finite_graph.hpp"
#include "dirspace/graph.hpp"
#include "dirspace/isometry.hpp"
#include "dirspace/ladder.hpp"
#include "dirspace/permgroup.hpp"
#include "dirspace/profile.hpp"
#include "dirspace/tree.hpp"

namespace dirspace {

enum class TriBool { True, False, NotDecidable };
const char* triBoolName(TriBool t);

// Element of an instance's acting group.
class GroupElement {
 public:
  virtual ~GroupElement() = default;
  virtual std::string label() const = 0;
};
using ElemPtr = std::shared_ptr<const GroupElement>;

// A concrete group action wiring a graph, an isometry family, COS handles
// and an exact index oracle together.
class Instance {
 public:
  virtual ~Instance() = default;

  virtual std::string id() const = 0;
  virtual std::string kindName() const = 0;
  virtual const Graph* graph() const { return nullptr; }
  virtual bool hasCosOracle() const { return false; }

  // Smallest C with index(d) <= C * scale-rate^d for the instance's
  // one-orbit index formulas; drives the provable truncation slack.
  virtual double indexSlackConstant() const { return 1.0; }

  virtual ElemPtr parseElement(const std::string& spec) const = 0;
  virtual ElemPtr identityElement() const = 0;
  virtual ElemPtr multiply(const ElemPtr& a, const ElemPtr& b) const = 0;
  virtual ElemPtr invert(const ElemPtr& a) const = 0;

  // Graph action of the element, when the instance has a graph.
  virtual std::optional<IsoPtr> isometryOf(const ElemPtr& e) const {
    (void)e;
    return std::nullopt;
  }

  // --- COS oracle surface; throws Unsupported unless hasCosOracle(). ---
  virtual BigInt index(const CosHandle& u, const CosHandle& v) const;
  virtual CosHandle conjugateHandle(const ElemPtr& e, const CosHandle& u) const;
  virtual std::vector<CosHandle> scaleCandidates(const ElemPtr& e,
                                                 const TruncationProfile& profile) const;
  virtual std::optional<BigInt> closedFormScale(const ElemPtr& e) const {
    (void)e;
    return std::nullopt;
  }
  virtual std::optional<bool> handleIncludes(const CosHandle& u, const CosHandle& v) const {
    (void)u;
    (void)v;
    return std::nullopt;
  }
  virtual CosHandle defaultBaseHandle(const ElemPtr& e, const TruncationProfile& profile) const;
  virtual CosHandle parseHandle(const nlohmann::json& spec) const;
  virtual bool tidyAbove(const ElemPtr& e, const CosHandle& u, int depth) const;
  virtual TriBool tidyBelow(const ElemPtr& e, const CosHandle& u) const;
};

using InstancePtr = std::shared_ptr<const Instance>;

ElemPtr elementPower(const Instance& inst, const ElemPtr& e, std::int64_t k);
ElemPtr conjugateElement(const Instance& inst, const ElemPtr& h, const ElemPtr& g);  // h g h^-1

// ---------------------------------------------------------------------------

class TreeInstance final : public Instance {
 public:
  TreeInstance(int degree, std::string id);

  std::string id() const override { return id_; }
  std::string kindName() const override { return "tree"; }
  const Graph* graph() const override { return &tree_; }
  const TreeGraph& tree() const { return tree_; }
  bool hasCosOracle() const override { return true; }
  double indexSlackConstant() const override;

  ElemPtr parseElement(const std::string& spec) const override;
  ElemPtr elementFromJson(const nlohmann::json& spec) const;
  ElemPtr elementOf(IsoPtr iso) const;
  ElemPtr identityElement() const override;
  ElemPtr multiply(const ElemPtr& a, const ElemPtr& b) const override;
  ElemPtr invert(const ElemPtr& a) const override;
  std::optional<IsoPtr> isometryOf(const ElemPtr& e) const override;

  BigInt index(const CosHandle& u, const CosHandle& v) const override;
  CosHandle conjugateHandle(const ElemPtr& e, const CosHandle& u) const override;
  std::vector<CosHandle> scaleCandidates(const ElemPtr& e,
                                         const TruncationProfile& profile) const override;
  CosHandle defaultBaseHandle(const ElemPtr& e, const TruncationProfile& profile) const override;
  CosHandle parseHandle(const nlohmann::json& spec) const override;
  bool tidyAbove(const ElemPtr& e, const CosHandle& u, int depth) const override;
  TriBool tidyBelow(const ElemPtr& e, const CosHandle& u) const override;

  // Exact orbit count of tuple `moved` under the pointwise stabilizer of
  // `fixed`: the product formula over the convex hull.
  BigInt tupleOrbitCount(const std::vector<Vertex>& fixed, const std::vector<Vertex>& moved) const;

 private:
  TreeGraph tree_;
  std::string id_;
};

class ExampleInstance final : public Instance {
 public:
  ExampleInstance(int order, std::string id);

  std::string id() const override { return id_; }
  std::string kindName() const override { return "example"; }
  bool hasCosOracle() const override { return true; }
  double indexSlackConstant() const override { return 1.0; }
  const ExampleGroup& group() const { return group_; }

  ElemPtr parseElement(const std::string& spec) const override;
  ElemPtr elementFromJson(const nlohmann::json& spec) const;
  ElemPtr elementOf(ExampleElement e) const;
  ElemPtr identityElement() const override;
  ElemPtr multiply(const ElemPtr& a, const ElemPtr& b) const override;
  ElemPtr invert(const ElemPtr& a) const override;
  const ExampleElement& raw(const ElemPtr& e) const;

  BigInt index(const CosHandle& u, const CosHandle& v) const override;
  CosHandle conjugateHandle(const ElemPtr& e, const CosHandle& u) const override;
  std::vector<CosHandle> scaleCandidates(const ElemPtr& e,
                                         const TruncationProfile& profile) const override;
  std::optional<BigInt> closedFormScale(const ElemPtr& e) const override;
  std::optional<bool> handleIncludes(const CosHandle& u, const CosHandle& v) const override;
  CosHandle defaultBaseHandle(const ElemPtr& e, const TruncationProfile& profile) const override;
  CosHandle parseHandle(const nlohmann::json& spec) const override;
  bool tidyAbove(const ElemPtr& e, const CosHandle& u, int depth) const override;
  TriBool tidyBelow(const ElemPtr& e, const CosHandle& u) const override;

 private:
  ExampleSubgroup asSubgroup(const CosHandle& u) const;
  ExampleGroup group_;
  std::string id_;
};

// Coset graph of a finite permutation group over a subgroup, with the left
// multiplication action. Vertex stabilizers are exposed as COS handles with
// exact finite indices.
class CosetInstance final : public Instance {
 public:
  CosetInstance(int degree, std::vector<Perm> groupGens, std::vector<Perm> subgroupGens,
                std::vector<Perm> connectors, std::string id);

  std::string id() const override { return id_; }
  std::string kindName() const override { return "coset"; }
  const Graph* graph() const override { return graph_.get(); }
  bool hasCosOracle() const override { return true; }

  ElemPtr parseElement(const std::string& spec) const override;
  ElemPtr elementOf(Perm p) const;
  ElemPtr identityElement() const override;
  ElemPtr multiply(const ElemPtr& a, const ElemPtr& b) const override;
  ElemPtr invert(const ElemPtr& a) const override;
  std::optional<IsoPtr> isometryOf(const ElemPtr& e) const override;

  BigInt index(const CosHandle& u, const CosHandle& v) const override;
  CosHandle conjugateHandle(const ElemPtr& e, const CosHandle& u) const override;
  std::vector<CosHandle> scaleCandidates(const ElemPtr& e,
                                         const TruncationProfile& profile) const override;
  CosHandle defaultBaseHandle(const ElemPtr& e, const TruncationProfile& profile) const override;
  CosHandle parseHandle(const nlohmann::json& spec) const override;
  bool tidyAbove(const ElemPtr& e, const CosHandle& u, int depth) const override;
  TriBool tidyBelow(const ElemPtr& e, const CosHandle& u) const override;

  bool connected() const { return connected_; }
  const std::vector<Perm>& elements() const { return elements_; }
  Vertex cosetVertex(const Perm& g) const;
  // Stabilizer of a vertex tuple as an explicit element set.
  std::vector<Perm> stabilizerElements(const std::vector<Vertex>& tuple) const;

 private:
  Perm repOf(const Vertex& v) const;
  int degree_;
  std::vector<Perm> elements_;        // full group, sorted
  std::vector<Perm> subgroup_;        // U, sorted
  std::vector<Perm> connectors_;      // S, symmetric
  std::shared_ptr<FiniteGraph> graph_;
  std::unordered_map<std::string, Perm> reps_;  // vertex code -> coset representative
  bool connected_ = true;
  std::string id_;
};

// Plain finite graph (or ladder) without a group oracle: graph-side
// operations only.
class GraphOnlyInstance final : public Instance {
 public:
  GraphOnlyInstance(std::shared_ptr<const Graph> g, std::string id, std::string kind);

  std::string id() const override { return id_; }
  std::string kindName() const override { return kind_; }
  const Graph* graph() const override { return graph_.get(); }

  ElemPtr parseElement(const std::string& spec) const override;
  ElemPtr elementOf(IsoPtr iso) const;
  ElemPtr identityElement() const override;
  ElemPtr multiply(const ElemPtr& a, const ElemPtr& b) const override;
  ElemPtr invert(const ElemPtr& a) const override;
  std::optional<IsoPtr> isometryOf(const ElemPtr& e) const override;

 private:
  std::shared_ptr<const Graph> graph_;
  std::string id_;
  std::string kind_;
};

// Instance descriptors: "tree:3", "example:2", "ladder", a path to a graph
// JSON file, or a descriptor object {"kind": ...}.
InstancePtr makeInstance(const std::string& spec);
InstancePtr instanceFromJson(const nlohmann::json& spec, const std::string& id);

// Isometry loader for graph instances: an explicit permutation {"map": ...}
// or a structured tree descriptor; accepts a file path or inline JSON.
ElemPtr loadElement(const Instance& inst, const std::string& pathOrSpec);

}  // namespace dirspace
