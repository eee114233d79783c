#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dirspace/cos.hpp"
#include "dirspace/instances.hpp"
#include "dirspace/profile.hpp"

namespace dirspace {

bool movesTowardsInfinity(const Instance& inst, const ElemPtr& e, const TruncationProfile& profile);

struct AsymptoticVerdict {
  bool related = false;
  std::int64_t kAlpha = 0;
  std::int64_t kBeta = 0;
  double boundWitness = 0.0;       // max log-distance of the matched rays
  BigInt boundWitnessProduct = 1;  // the same maximum as an exact integer
  bool growthCertified = false;    // unrelated: every tested pair grows monotonically
  std::string detail;
};

// Searches speed-matched exponent pairs; exact scale matches first.
// Throws Inconclusive when no pair stabilizes and growth is not certified.
AsymptoticVerdict asymptotic(const Instance& inst, const ElemPtr& a, const ElemPtr& b,
                             const TruncationProfile& profile);

struct DeltaRow {
  std::int64_t n = 0;
  std::int64_t k = 0;
  BigInt index = 1;
  double value = 0.0;
  double slack = 0.0;  // provable truncation slack for this row
};

struct DeltaPlusTable {
  std::vector<DeltaRow> rows;     // n = 1..N
  double headline = 0.0;          // max over the upper half of the window
  double slack = 0.0;             // slack at the headline window
  CosHandle baseU;
  CosHandle baseV;
};

DeltaPlusTable deltaPlus(const Instance& inst, const ElemPtr& a, const ElemPtr& b,
                         const CosHandle& u, const CosHandle& v,
                         const TruncationProfile& profile);

struct DeltaReport {
  DeltaPlusTable ab;
  DeltaPlusTable ba;
  double delta = 0.0;
  double slack = 0.0;
  std::string verdict;  // "same-class" | "distinct" | "inconclusive"
};

// Symmetrized pseudometric with default base handles (axis-vertex
// stabilizers on graph instances).
DeltaReport deltaPseudometric(const Instance& inst, const ElemPtr& a, const ElemPtr& b,
                              const TruncationProfile& profile);
DeltaReport deltaPseudometricWith(const Instance& inst, const ElemPtr& a, const ElemPtr& b,
                                  const CosHandle& u, const CosHandle& v,
                                  const TruncationProfile& profile);

struct DirectionPairReport {
  std::size_t first = 0;
  std::size_t second = 0;
  bool sameClass = false;
  std::optional<DeltaReport> delta;
  std::optional<BigInt> doubleStabilizerWitness;  // distinct-end pairs, graph instances
  std::string error;
};

struct DirectionReport {
  std::vector<std::string> labels;          // all inputs
  std::vector<std::size_t> considered;      // indices moving towards infinity
  std::vector<int> classOf;                 // class id per considered element
  int classCount = 0;
  std::vector<DirectionPairReport> pairs;   // over considered elements
  bool assertionsHold = true;               // same-class delta small, cross-class near 2
  std::string notes;
};

DirectionReport directionReport(const Instance& inst, const std::vector<ElemPtr>& elements,
                                const TruncationProfile& profile);

// Number of pairwise-distinct ends among {h(omega_-(g))} for the listed
// conjugators h. On the example instance, counts asymptotic classes of the
// conjugated inverses instead (the instance has no graph boundary).
std::size_t boundaryOrbitProbe(const Instance& inst, const ElemPtr& g,
                               const std::vector<ElemPtr>& conjugators,
                               const TruncationProfile& profile);

}  // namespace dirspace
