#include "dirspace/finite_graph.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <set>

namespace dirspace {

FiniteGraph::FiniteGraph(std::vector<std::string> vertices,
                         std::vector<std::pair<std::string, std::string>> edges) {
  for (auto& code : vertices) {
    Vertex v{code};
    if (adjacency_.count(v))
      fail(Errc::InvariantViolation, "duplicate vertex \"" + code + "\"");
    adjacency_.emplace(std::move(v), std::vector<Vertex>{});
  }
  std::set<std::pair<Vertex, Vertex>> seen;
  for (auto& [a, b] : edges) {
    Vertex u{a}, v{b};
    if (u == v) fail(Errc::InvariantViolation, "self-loop at \"" + a + "\"");
    if (!adjacency_.count(u)) fail(Errc::InvariantViolation, "edge endpoint \"" + a + "\" is not a vertex");
    if (!adjacency_.count(v)) fail(Errc::InvariantViolation, "edge endpoint \"" + b + "\" is not a vertex");
    auto key = u < v ? std::make_pair(u, v) : std::make_pair(v, u);
    if (!seen.insert(key).second)
      fail(Errc::InvariantViolation, "duplicate edge (\"" + a + "\", \"" + b + "\")");
    adjacency_[u].push_back(v);
    adjacency_[v].push_back(u);
  }
  for (auto& [v, ns] : adjacency_) {
    std::sort(ns.begin(), ns.end());
    vertices_.push_back(v);
  }
}

Vertex FiniteGraph::basepoint() const {
  if (vertices_.empty()) fail(Errc::InvariantViolation, "empty graph has no basepoint");
  return vertices_.front();
}

std::vector<Vertex> FiniteGraph::neighbors(const Vertex& v) const {
  auto it = adjacency_.find(v);
  if (it == adjacency_.end()) fail(Errc::InvariantViolation, "unknown vertex " + v.code);
  return it->second;
}

std::string FiniteGraph::describe() const {
  return "finite graph on " + std::to_string(vertices_.size()) + " vertices";
}

FiniteGraph FiniteGraph::fromJson(const nlohmann::json& spec) {
  if (!spec.is_object() || !spec.contains("vertices") || !spec.contains("edges"))
    fail(Errc::ParseError, "graph file needs \"vertices\" and \"edges\"");
  std::vector<std::string> vertices;
  for (const auto& v : spec.at("vertices")) {
    if (!v.is_string()) fail(Errc::ParseError, "vertex codes must be strings");
    vertices.push_back(v.get<std::string>());
  }
  std::vector<std::pair<std::string, std::string>> edges;
  for (const auto& e : spec.at("edges")) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
      fail(Errc::ParseError, "edges must be two-element string arrays");
    edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
  }
  return FiniteGraph(std::move(vertices), std::move(edges));
}

FiniteGraph FiniteGraph::fromFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::ParseError, "cannot open graph file " + path);
  nlohmann::json spec;
  try {
    in >> spec;
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::ParseError, std::string("invalid JSON in ") + path + ": " + e.what());
  }
  return fromJson(spec);
}

FiniteGraph FiniteGraph::path(int n) {
  std::vector<std::string> vs;
  std::vector<std::pair<std::string, std::string>> es;
  for (int i = 0; i < n; ++i) vs.push_back(std::to_string(i));
  for (int i = 0; i + 1 < n; ++i) es.emplace_back(std::to_string(i), std::to_string(i + 1));
  return FiniteGraph(std::move(vs), std::move(es));
}

FiniteGraph FiniteGraph::cycle(int n) {
  std::vector<std::string> vs;
  std::vector<std::pair<std::string, std::string>> es;
  for (int i = 0; i < n; ++i) vs.push_back(std::to_string(i));
  for (int i = 0; i < n; ++i) es.emplace_back(std::to_string(i), std::to_string((i + 1) % n));
  return FiniteGraph(std::move(vs), std::move(es));
}

FiniteGraph FiniteGraph::randomConnected(int n, double edgeProbability, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<std::string> vs;
  for (int i = 0; i < n; ++i) vs.push_back(i < 10 ? "0" + std::to_string(i) : std::to_string(i));
  std::vector<std::pair<std::string, std::string>> es;
  // Random spanning tree first, then extra edges; connected by construction.
  for (int i = 1; i < n; ++i) {
    std::uniform_int_distribution<int> pick(0, i - 1);
    es.emplace_back(vs[static_cast<std::size_t>(pick(rng))], vs[static_cast<std::size_t>(i)]);
  }
  std::set<std::pair<std::string, std::string>> have(es.begin(), es.end());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      auto key = std::make_pair(vs[static_cast<std::size_t>(i)], vs[static_cast<std::size_t>(j)]);
      auto rkey = std::make_pair(key.second, key.first);
      if (have.count(key) || have.count(rkey)) continue;
      if (coin(rng) < edgeProbability) {
        have.insert(key);
        es.push_back(key);
      }
    }
  }
  return FiniteGraph(std::move(vs), std::move(es));
}

IsoPtr FiniteGraph::permutationFromJson(const nlohmann::json& spec) const {
  if (!spec.is_object() || !spec.contains("map") || !spec.at("map").is_object())
    fail(Errc::ParseError, "isometry file needs a \"map\" object");
  std::unordered_map<Vertex, Vertex> forward;
  for (const auto& [from, to] : spec.at("map").items()) {
    if (!to.is_string()) fail(Errc::ParseError, "permutation images must be strings");
    Vertex u{from}, v{to.get<std::string>()};
    if (!contains(u)) fail(Errc::InvariantViolation, "permutation names unknown vertex \"" + from + "\"");
    if (!contains(v))
      fail(Errc::InvariantViolation, "permutation image \"" + v.code + "\" is not a vertex");
    forward.emplace(std::move(u), std::move(v));
  }
  if (forward.size() != vertices_.size())
    fail(Errc::InvariantViolation, "permutation must cover every vertex exactly once");
  auto iso = std::make_shared<PermutationIso>(std::move(forward), "permutation");
  // Adjacency preservation, with the offending edge named.
  for (const Vertex& u : vertices_) {
    for (const Vertex& w : neighbors(u)) {
      if (!adjacent(*this, iso->apply(u), iso->apply(w)))
        fail(Errc::InvariantViolation,
             "permutation breaks edge (\"" + u.code + "\", \"" + w.code + "\")");
    }
  }
  return iso;
}

}  // namespace dirspace
