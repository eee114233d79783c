#pragma once

#include <optional>
#include <vector>

#include "dirspace/bigint.hpp"
#include "dirspace/cos_handle.hpp"
#include "dirspace/instances.hpp"
#include "dirspace/profile.hpp"

namespace dirspace {

// d(U,V) carried as the exact integer product [U:UcapV][V:UcapV]; the log is
// display-only, every comparison uses the integers.
struct CosDistance {
  BigInt forward;
  BigInt backward;
  BigInt product;
  double log = 0.0;
};

CosDistance cosDistance(const Instance& inst, const CosHandle& u, const CosHandle& v);

struct Displacement {
  CosHandle moved;    // alpha(U)
  BigInt forward;     // [alpha(U) : alpha(U) cap U]
  BigInt backward;    // [U : alpha(U) cap U]
  BigInt product;
};

Displacement displacement(const Instance& inst, const ElemPtr& e, const CosHandle& u);

enum class ScaleMethod { ClosedForm, LimitFormula, TidySearch };
const char* scaleMethodName(ScaleMethod m);

struct ScaleEstimate {
  BigInt value = 1;           // exact for ClosedForm and TidySearch
  ScaleMethod method = ScaleMethod::TidySearch;
  std::int64_t window = 0;
  std::vector<double> iterates;  // n-th roots of the limit-formula indices
  double limitValue = 0.0;
  bool familyRelative = false;   // TidySearch caveat: min over the declared family
  std::optional<CosHandle> minimizer;
};

ScaleEstimate scaleEstimate(const Instance& inst, const ElemPtr& e,
                            const TruncationProfile& profile);

// True iff U attains the minimal displacement over the candidates; verifies
// the displacement identity against the scale values when it does.
bool tidyDisplacementCheck(const Instance& inst, const ElemPtr& e, const CosHandle& u,
                           const std::vector<CosHandle>& candidates,
                           const TruncationProfile& profile);

// U = U+ U- factorization at the finite quotient of the given depth.
bool tidyAboveCheck(const Instance& inst, const ElemPtr& e, const CosHandle& u, int depth);

// Closedness of U--, decidable only on algebraic instances.
TriBool tidyBelowCheck(const Instance& inst, const ElemPtr& e, const CosHandle& u);

}  // namespace dirspace
