#pragma once

#include <cstdint>
#include <vector>

#include "dirspace/errors.hpp"

namespace dirspace {

// Inverse system of finite nonempty sets Y_1..Y_d. Levels are index sets
// {0..size-1}; only consecutive maps are stored, longer maps are composed
// on demand (which makes the compatibility law hold by construction).
struct InverseSystem {
  std::vector<std::size_t> sizes;              // |Y_1| .. |Y_d|
  std::vector<std::vector<int>> consecutive;   // consecutive[i]: Y_{i+2} -> Y_{i+1}

  std::size_t levels() const { return sizes.size(); }
  void validate() const;
  // f_{i,j}(y) for 1-based levels i <= j.
  int map(std::size_t i, std::size_t j, int y) const;
};

struct InverseLimitResult {
  std::vector<int> thread;          // one element per level, f_{i,j}-compatible
  std::size_t threadCount = 0;      // |Y| at this finite depth
  std::size_t sizeBound = 0;        // max_i |Y_i|
  std::vector<std::size_t> imageSizes;  // |Y'_i|, the projections of Y
};

// Pigeonhole selection from the top level down: at each level keep the
// element hit by the most surviving threads (ties to the smallest index).
InverseLimitResult solveInverseLimit(const InverseSystem& sys);

bool isThread(const InverseSystem& sys, const std::vector<int>& candidate);

}  // namespace dirspace
