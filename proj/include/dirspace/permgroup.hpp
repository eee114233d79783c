#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dirspace/errors.hpp"

namespace dirspace {

// Permutations of {0..degree-1} as image vectors.
using Perm = std::vector<int>;

Perm identityPerm(int degree);
Perm composePerm(const Perm& outer, const Perm& inner);  // outer after inner
Perm inversePerm(const Perm& p);
bool isPerm(const Perm& p);
std::string permCode(const Perm& p);

// Closure of the generators; sorted. Throws when the closure exceeds `cap`.
std::vector<Perm> permClosure(const std::vector<Perm>& gens, int degree, std::size_t cap = 100000);

}  // namespace dirspace
