#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "dirspace/graph.hpp"
#include "dirspace/isometry.hpp"

namespace dirspace {

// Explicit finite graph. Neighbor lists are kept sorted; the basepoint is
// the smallest code.
class FiniteGraph final : public Graph {
 public:
  FiniteGraph(std::vector<std::string> vertices,
              std::vector<std::pair<std::string, std::string>> edges);

  Vertex basepoint() const override;
  std::vector<Vertex> neighbors(const Vertex& v) const override;
  bool isFinite() const override { return true; }
  std::string describe() const override;

  const std::vector<Vertex>& vertices() const { return vertices_; }
  bool contains(const Vertex& v) const { return adjacency_.count(v) != 0; }

  // {"vertices": [...], "edges": [[a,b],...]}; self-loops and duplicate
  // edges are rejected with a diagnostic naming the offending pair.
  static FiniteGraph fromJson(const nlohmann::json& spec);
  static FiniteGraph fromFile(const std::string& path);

  // Path graph 0-1-...-(n-1) and cycle graph on n vertices.
  static FiniteGraph path(int n);
  static FiniteGraph cycle(int n);
  // Deterministic connected random graph on n vertices.
  static FiniteGraph randomConnected(int n, double edgeProbability, std::uint64_t seed);

  // {"map": {"a": "b", ...}}: validated vertex permutation.
  IsoPtr permutationFromJson(const nlohmann::json& spec) const;

 private:
  std::vector<Vertex> vertices_;
  std::map<Vertex, std::vector<Vertex>> adjacency_;
};

}  // namespace dirspace
