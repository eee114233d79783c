#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "dirspace/errors.hpp"
#include "dirspace/graph.hpp"

namespace dirspace {

// Compact open subgroup handle: either the pointwise stabilizer of a finite
// vertex tuple, or a closed-form subgroup of an algebraic instance
// (support-interval products U_N x U_M for the two-direction group).
struct CosHandle {
  enum class Kind { Stabilizer, Algebraic };

  Kind kind = Kind::Stabilizer;
  std::string instanceId;
  std::vector<Vertex> tuple;  // Stabilizer: sorted, duplicate-free, nonempty
  long long algN = 0;         // Algebraic: the two cutoffs
  long long algM = 0;

  static CosHandle stabilizer(std::string instanceId, std::vector<Vertex> vertices);
  static CosHandle algebraic(std::string instanceId, long long n, long long m);

  bool operator==(const CosHandle&) const = default;

  std::string key() const;
  nlohmann::json toJson() const;
  static CosHandle fromJson(const std::string& instanceId, const nlohmann::json& spec);
};

}  // namespace dirspace
