#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "dirspace/tree.hpp"

namespace dirspace {

// Finite ball of a regular tree together with its full automorphism group,
// enumerated explicitly (3072 elements for the radius-3 ball of the
// 3-regular tree). Serves as the independent oracle for the closed-form
// tuple-orbit counts and powers the tidy-above factorization check.
class TreeBall {
 public:
  TreeBall(const TreeGraph& tree, int radius);

  const std::vector<Vertex>& vertices() const { return vertices_; }
  int radius() const { return radius_; }
  int indexOf(const Vertex& v) const;
  bool contains(const Vertex& v) const { return index_.count(v.code) != 0; }

  // Automorphisms as permutations of the vertex index space, in a
  // deterministic enumeration order. The identity comes first.
  const std::vector<std::vector<int>>& automorphisms() const { return autos_; }

  std::vector<int> compose(const std::vector<int>& outer, const std::vector<int>& inner) const;

  // Indices of automorphisms fixing every listed vertex.
  std::vector<int> pointwiseStabilizer(const std::vector<Vertex>& tuple) const;

  // Orbit size of `tuple` under the listed automorphisms.
  std::uint64_t tupleOrbitSize(const std::vector<int>& autoIndices,
                               const std::vector<Vertex>& tuple) const;

 private:
  int radius_;
  std::vector<Vertex> vertices_;                 // sorted by (depth, code)
  std::unordered_map<std::string, int> index_;
  std::vector<std::vector<int>> autos_;
};

}  // namespace dirspace
