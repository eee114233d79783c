#include "dirspace/tree_ball.hpp"

#include <algorithm>
#include <set>

namespace dirspace {

namespace {

std::vector<std::vector<int>> allPermutations(int k) {
  std::vector<int> base(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) base[static_cast<std::size_t>(i)] = i;
  std::vector<std::vector<int>> out;
  do {
    out.push_back(base);
  } while (std::next_permutation(base.begin(), base.end()));
  return out;
}

}  // namespace

TreeBall::TreeBall(const TreeGraph& tree, int radius) : radius_(radius) {
  if (radius < 1) fail(Errc::DepthInfeasible, "ball radius must be at least 1");
  // Guard the enumeration size; radius 3 on the 3-regular tree gives 3072.
  if (tree.degree() > 3 || radius > 3)
    fail(Errc::DepthInfeasible, "ball automorphism enumeration supports degree 3, radius <= 3");

  vertices_ = ballVertices(tree, tree.basepoint(), radius);
  std::sort(vertices_.begin(), vertices_.end(), [](const Vertex& a, const Vertex& b) {
    if (a.code.size() != b.code.size()) return a.code.size() < b.code.size();
    return a.code < b.code;
  });
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    index_.emplace(vertices_[i].code, static_cast<int>(i));

  // Internal nodes in BFS order with their (sorted) children inside the ball.
  struct Node {
    int self;
    std::vector<int> children;
  };
  std::vector<Node> internal;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    const Vertex& v = vertices_[i];
    if (static_cast<int>(v.code.size()) == radius) continue;
    Node node;
    node.self = static_cast<int>(i);
    for (const Vertex& w : tree.neighbors(v)) {
      if (w.code.size() == v.code.size() + 1) node.children.push_back(indexOf(w));
    }
    std::sort(node.children.begin(), node.children.end(),
              [&](int a, int b) { return vertices_[static_cast<std::size_t>(a)].code <
                                         vertices_[static_cast<std::size_t>(b)].code; });
    internal.push_back(std::move(node));
  }

  // Odometer over child permutations at every internal node.
  std::vector<std::vector<std::vector<int>>> perms;
  perms.reserve(internal.size());
  for (const Node& n : internal) perms.push_back(allPermutations(static_cast<int>(n.children.size())));

  std::vector<std::size_t> odometer(internal.size(), 0);
  const int n = static_cast<int>(vertices_.size());
  while (true) {
    std::vector<int> phi(static_cast<std::size_t>(n), -1);
    phi[0] = 0;  // root fixed
    for (std::size_t t = 0; t < internal.size(); ++t) {
      const Node& node = internal[t];
      const int image = phi[static_cast<std::size_t>(node.self)];
      // Children of the image vertex, sorted the same way.
      const Vertex& imageVertex = vertices_[static_cast<std::size_t>(image)];
      std::vector<int> imageChildren;
      for (const Vertex& w : tree.neighbors(imageVertex)) {
        if (w.code.size() == imageVertex.code.size() + 1 && contains(w))
          imageChildren.push_back(indexOf(w));
      }
      std::sort(imageChildren.begin(), imageChildren.end(), [&](int a, int b) {
        return vertices_[static_cast<std::size_t>(a)].code < vertices_[static_cast<std::size_t>(b)].code;
      });
      const auto& perm = perms[t][odometer[t]];
      for (std::size_t c = 0; c < node.children.size(); ++c)
        phi[static_cast<std::size_t>(node.children[c])] = imageChildren[static_cast<std::size_t>(perm[c])];
    }
    autos_.push_back(std::move(phi));

    std::size_t pos = 0;
    while (pos < odometer.size()) {
      if (++odometer[pos] < perms[pos].size()) break;
      odometer[pos] = 0;
      ++pos;
    }
    if (pos == odometer.size()) break;
  }
}

int TreeBall::indexOf(const Vertex& v) const {
  auto it = index_.find(v.code);
  if (it == index_.end()) fail(Errc::OracleHorizonExceeded, "vertex " + v.code + " outside the ball");
  return it->second;
}

std::vector<int> TreeBall::compose(const std::vector<int>& outer,
                                   const std::vector<int>& inner) const {
  std::vector<int> out(inner.size());
  for (std::size_t i = 0; i < inner.size(); ++i)
    out[i] = outer[static_cast<std::size_t>(inner[i])];
  return out;
}

std::vector<int> TreeBall::pointwiseStabilizer(const std::vector<Vertex>& tuple) const {
  std::vector<int> fixed;
  for (const Vertex& v : tuple) fixed.push_back(indexOf(v));
  std::vector<int> out;
  for (std::size_t a = 0; a < autos_.size(); ++a) {
    bool ok = true;
    for (int idx : fixed) {
      if (autos_[a][static_cast<std::size_t>(idx)] != idx) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(static_cast<int>(a));
  }
  return out;
}

std::uint64_t TreeBall::tupleOrbitSize(const std::vector<int>& autoIndices,
                                       const std::vector<Vertex>& tuple) const {
  std::vector<int> idx;
  for (const Vertex& v : tuple) idx.push_back(indexOf(v));
  std::set<std::vector<int>> images;
  for (int a : autoIndices) {
    std::vector<int> image;
    image.reserve(idx.size());
    for (int i : idx) image.push_back(autos_[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)]);
    images.insert(std::move(image));
  }
  return images.size();
}

}  // namespace dirspace
