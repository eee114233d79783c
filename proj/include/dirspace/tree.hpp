#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dirspace/graph.hpp"
#include "dirspace/isometry.hpp"

namespace dirspace {

// The (q+1)-regular tree. Vertex codes are reduced words over the letters
// '0'..'q' (no letter repeats immediately); the basepoint is the empty word.
// Ancestors are prefixes, so d(u,v) = |u| + |v| - 2*|common prefix|.
class TreeGraph final : public Graph {
 public:
  explicit TreeGraph(int degree);

  int degree() const { return degree_; }
  Vertex basepoint() const override { return Vertex{""}; }
  std::vector<Vertex> neighbors(const Vertex& v) const override;
  std::optional<std::int64_t> distanceHint(const Vertex& u, const Vertex& v) const override;
  std::string describe() const override;

  bool validCode(const std::string& code) const;
  char letter(int i) const { return static_cast<char>('0' + i); }
  int letterIndex(char c) const { return c - '0'; }

 private:
  int degree_;  // q+1 >= 3
};

// Permutation of the q+1 edge colors, applied letterwise to codes.
struct ColorPerm {
  std::vector<int> map;  // map[i] = image of letter i

  static ColorPerm identity(int degree);
  static ColorPerm fromString(const std::string& s, int degree);  // s[i] = image digit of i
  ColorPerm inverse() const;
  ColorPerm then(const ColorPerm& next) const;  // apply *this, then next
  bool isIdentity() const;
  char apply(char c) const { return static_cast<char>('0' + map[c - '0']); }
  std::string applyWord(const std::string& w) const;
  std::string str() const;
};

// w -> reduce(word . sigma(w)). Color-permuted left multiplication; the
// workhorse for translations and vertex rotations.
class TreeWordPermIso final : public Isometry {
 public:
  TreeWordPermIso(const TreeGraph& tree, std::string word, ColorPerm perm, std::string label);
  Vertex apply(const Vertex& v) const override;
  Vertex applyInverse(const Vertex& v) const override;
  std::string label() const override { return label_; }

  const std::string& word() const { return word_; }
  const ColorPerm& perm() const { return perm_; }

 private:
  std::string word_;
  ColorPerm perm_;
  std::string invWord_;
  ColorPerm invPerm_;
  std::string label_;
};

// Fixes everything outside the subtree hanging below `at`; inside, applies
// the color permutation letterwise. Requires perm to fix the last letter of
// `at` so reduced words stay reduced.
class TreeTwistIso final : public Isometry {
 public:
  TreeTwistIso(const TreeGraph& tree, std::string at, ColorPerm perm);
  Vertex apply(const Vertex& v) const override;
  Vertex applyInverse(const Vertex& v) const override;
  std::string label() const override;

 private:
  std::string at_;
  ColorPerm perm_;
  ColorPerm invPerm_;
};

// Translation of step `step` along the periodic axis spelled by `axisWord`
// (distinct letters, e.g. "01"); the axis passes through the basepoint.
IsoPtr treeTranslation(const TreeGraph& tree, const std::string& axisWord, std::int64_t step);

// Elliptic element fixing the vertex `fixed`, acting by `perm` on colors.
IsoPtr treeRotation(const TreeGraph& tree, const std::string& fixed, const ColorPerm& perm);

IsoPtr treeTwist(const TreeGraph& tree, const std::string& at, const ColorPerm& perm);

// Reduced concatenation of reduced words (letters are involutions).
std::string reduceConcat(const std::string& a, const std::string& b);
std::string reverseWord(const std::string& w);

}  // namespace dirspace
