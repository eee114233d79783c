#include "dirspace/tree.hpp"

#include <algorithm>
#include <numeric>

namespace dirspace {

TreeGraph::TreeGraph(int degree) : degree_(degree) {
  if (degree < 3) fail(Errc::ArityTooSmall, "regular tree degree must be at least 3");
  if (degree > 10) fail(Errc::Unsupported, "tree codes use single digits; degree must be <= 10");
}

bool TreeGraph::validCode(const std::string& code) const {
  for (std::size_t i = 0; i < code.size(); ++i) {
    const int l = code[i] - '0';
    if (l < 0 || l >= degree_) return false;
    if (i > 0 && code[i] == code[i - 1]) return false;
  }
  return true;
}

std::vector<Vertex> TreeGraph::neighbors(const Vertex& v) const {
  if (!validCode(v.code)) fail(Errc::InvariantViolation, "invalid tree code " + v.code);
  std::vector<Vertex> out;
  out.reserve(static_cast<std::size_t>(degree_));
  if (!v.code.empty()) out.push_back(Vertex{v.code.substr(0, v.code.size() - 1)});
  for (int i = 0; i < degree_; ++i) {
    const char c = letter(i);
    if (!v.code.empty() && v.code.back() == c) continue;
    out.push_back(Vertex{v.code + c});
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<std::int64_t> TreeGraph::distanceHint(const Vertex& u, const Vertex& v) const {
  std::size_t lcp = 0;
  while (lcp < u.code.size() && lcp < v.code.size() && u.code[lcp] == v.code[lcp]) ++lcp;
  return static_cast<std::int64_t>(u.code.size() + v.code.size() - 2 * lcp);
}

std::string TreeGraph::describe() const {
  return "regular tree of degree " + std::to_string(degree_);
}

ColorPerm ColorPerm::identity(int degree) {
  ColorPerm p;
  p.map.resize(static_cast<std::size_t>(degree));
  std::iota(p.map.begin(), p.map.end(), 0);
  return p;
}

ColorPerm ColorPerm::fromString(const std::string& s, int degree) {
  if (static_cast<int>(s.size()) != degree)
    fail(Errc::ParseError, "color permutation needs exactly " + std::to_string(degree) + " digits");
  ColorPerm p;
  p.map.assign(static_cast<std::size_t>(degree), -1);
  std::vector<bool> seen(static_cast<std::size_t>(degree), false);
  for (int i = 0; i < degree; ++i) {
    const int img = s[static_cast<std::size_t>(i)] - '0';
    if (img < 0 || img >= degree || seen[static_cast<std::size_t>(img)])
      fail(Errc::ParseError, "color permutation " + s + " is not a bijection");
    seen[static_cast<std::size_t>(img)] = true;
    p.map[static_cast<std::size_t>(i)] = img;
  }
  return p;
}

ColorPerm ColorPerm::inverse() const {
  ColorPerm p;
  p.map.assign(map.size(), 0);
  for (std::size_t i = 0; i < map.size(); ++i) p.map[static_cast<std::size_t>(map[i])] = static_cast<int>(i);
  return p;
}

ColorPerm ColorPerm::then(const ColorPerm& next) const {
  ColorPerm p;
  p.map.resize(map.size());
  for (std::size_t i = 0; i < map.size(); ++i) p.map[i] = next.map[static_cast<std::size_t>(map[i])];
  return p;
}

bool ColorPerm::isIdentity() const {
  for (std::size_t i = 0; i < map.size(); ++i)
    if (map[i] != static_cast<int>(i)) return false;
  return true;
}

std::string ColorPerm::applyWord(const std::string& w) const {
  std::string out = w;
  for (char& c : out) c = apply(c);
  return out;
}

std::string ColorPerm::str() const {
  std::string s;
  for (int v : map) s.push_back(static_cast<char>('0' + v));
  return s;
}

std::string reduceConcat(const std::string& a, const std::string& b) {
  std::string out = a;
  std::size_t i = 0;
  while (!out.empty() && i < b.size() && out.back() == b[i]) {
    out.pop_back();
    ++i;
  }
  out.append(b, i, std::string::npos);
  return out;
}

std::string reverseWord(const std::string& w) { return std::string(w.rbegin(), w.rend()); }

TreeWordPermIso::TreeWordPermIso(const TreeGraph& tree, std::string word, ColorPerm perm,
                                 std::string label)
    : word_(std::move(word)), perm_(std::move(perm)), label_(std::move(label)) {
  if (!tree.validCode(word_)) fail(Errc::ParseError, "word " + word_ + " is not a reduced code");
  if (static_cast<int>(perm_.map.size()) != tree.degree())
    fail(Errc::ParseError, "color permutation degree mismatch");
  invPerm_ = perm_.inverse();
  invWord_ = invPerm_.applyWord(reverseWord(word_));
}

Vertex TreeWordPermIso::apply(const Vertex& v) const {
  return Vertex{reduceConcat(word_, perm_.applyWord(v.code))};
}

Vertex TreeWordPermIso::applyInverse(const Vertex& v) const {
  return Vertex{reduceConcat(invWord_, invPerm_.applyWord(v.code))};
}

TreeTwistIso::TreeTwistIso(const TreeGraph& tree, std::string at, ColorPerm perm)
    : at_(std::move(at)), perm_(std::move(perm)) {
  if (!tree.validCode(at_)) fail(Errc::ParseError, "twist anchor " + at_ + " is not a reduced code");
  if (static_cast<int>(perm_.map.size()) != tree.degree())
    fail(Errc::ParseError, "color permutation degree mismatch");
  if (!at_.empty() && perm_.apply(at_.back()) != at_.back())
    fail(Errc::ParseError, "twist permutation must fix the letter '" + std::string(1, at_.back()) +
                               "' entering " + at_);
  invPerm_ = perm_.inverse();
}

Vertex TreeTwistIso::apply(const Vertex& v) const {
  if (v.code.size() <= at_.size() || v.code.compare(0, at_.size(), at_) != 0) return v;
  return Vertex{at_ + perm_.applyWord(v.code.substr(at_.size()))};
}

Vertex TreeTwistIso::applyInverse(const Vertex& v) const {
  if (v.code.size() <= at_.size() || v.code.compare(0, at_.size(), at_) != 0) return v;
  return Vertex{at_ + invPerm_.applyWord(v.code.substr(at_.size()))};
}

std::string TreeTwistIso::label() const { return "twist:" + at_ + ":" + perm_.str(); }

IsoPtr treeTranslation(const TreeGraph& tree, const std::string& axisWord, std::int64_t step) {
  if (axisWord.size() < 2) fail(Errc::ParseError, "axis word needs at least two letters");
  if (!tree.validCode(axisWord) || axisWord.front() == axisWord.back())
    fail(Errc::ParseError, "axis word must be cyclically reduced: " + axisWord);
  std::vector<bool> seen(static_cast<std::size_t>(tree.degree()), false);
  for (char c : axisWord) {
    const int i = tree.letterIndex(c);
    if (i < 0 || i >= tree.degree()) fail(Errc::ParseError, "axis letter out of range: " + axisWord);
    if (seen[static_cast<std::size_t>(i)])
      fail(Errc::ParseError, "axis word must use distinct letters: " + axisWord);
    seen[static_cast<std::size_t>(i)] = true;
  }
  if (step < 1) fail(Errc::ParseError, "translation step must be positive");

  const std::size_t p = axisWord.size();
  std::string word;
  word.reserve(static_cast<std::size_t>(step));
  for (std::int64_t i = 0; i < step; ++i) word.push_back(axisWord[static_cast<std::size_t>(i) % p]);

  // Rotate the axis letters by `step`; colors off the axis stay put.
  ColorPerm perm = ColorPerm::identity(tree.degree());
  for (std::size_t i = 0; i < p; ++i) {
    const int from = tree.letterIndex(axisWord[i]);
    const int to = tree.letterIndex(axisWord[(i + static_cast<std::size_t>(step)) % p]);
    perm.map[static_cast<std::size_t>(from)] = to;
  }
  return std::make_shared<TreeWordPermIso>(tree, word, perm,
                                           "shift:" + std::to_string(step) + "@" + axisWord);
}

IsoPtr treeRotation(const TreeGraph& tree, const std::string& fixed, const ColorPerm& perm) {
  if (!tree.validCode(fixed)) fail(Errc::ParseError, "rotation center " + fixed + " is not a code");
  // Solve u . perm(fixed) = fixed, so the rotation fixes `fixed`.
  const std::string image = perm.applyWord(fixed);
  const std::string word = reduceConcat(fixed, reverseWord(image));
  return std::make_shared<TreeWordPermIso>(tree, word, perm, "rot:" + fixed + ":" + perm.str());
}

IsoPtr treeTwist(const TreeGraph& tree, const std::string& at, const ColorPerm& perm) {
  return std::make_shared<TreeTwistIso>(tree, at, perm);
}

}  // namespace dirspace
