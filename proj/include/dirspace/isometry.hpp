#pragma once

#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "dirspace/errors.hpp"
#include "dirspace/graph.hpp"

namespace dirspace {

// Adjacency-preserving vertex bijection with a computable inverse.
class Isometry {
 public:
  virtual ~Isometry() = default;
  virtual Vertex apply(const Vertex& v) const = 0;
  virtual Vertex applyInverse(const Vertex& v) const = 0;
  virtual std::string label() const = 0;
};

using IsoPtr = std::shared_ptr<const Isometry>;

class IdentityIso final : public Isometry {
 public:
  Vertex apply(const Vertex& v) const override { return v; }
  Vertex applyInverse(const Vertex& v) const override { return v; }
  std::string label() const override { return "identity"; }
};

class InverseIso final : public Isometry {
 public:
  explicit InverseIso(IsoPtr base) : base_(std::move(base)) {}
  Vertex apply(const Vertex& v) const override { return base_->applyInverse(v); }
  Vertex applyInverse(const Vertex& v) const override { return base_->apply(v); }
  std::string label() const override { return base_->label() + "^-1"; }

 private:
  IsoPtr base_;
};

// first is applied after second: (f*g)(v) = f(g(v)).
class ComposeIso final : public Isometry {
 public:
  ComposeIso(IsoPtr first, IsoPtr second) : first_(std::move(first)), second_(std::move(second)) {}
  Vertex apply(const Vertex& v) const override { return first_->apply(second_->apply(v)); }
  Vertex applyInverse(const Vertex& v) const override {
    return second_->applyInverse(first_->applyInverse(v));
  }
  std::string label() const override { return "(" + first_->label() + "*" + second_->label() + ")"; }

 private:
  IsoPtr first_;
  IsoPtr second_;
};

// Explicit permutation of a finite vertex set.
class PermutationIso final : public Isometry {
 public:
  PermutationIso(std::unordered_map<Vertex, Vertex> forward, std::string label);
  Vertex apply(const Vertex& v) const override;
  Vertex applyInverse(const Vertex& v) const override;
  std::string label() const override { return label_; }

 private:
  std::unordered_map<Vertex, Vertex> forward_;
  std::unordered_map<Vertex, Vertex> backward_;
  std::string label_;
};

inline IsoPtr identityIso() { return std::make_shared<IdentityIso>(); }
inline IsoPtr inverseOf(IsoPtr f) { return std::make_shared<InverseIso>(std::move(f)); }
inline IsoPtr composeIso(IsoPtr after, IsoPtr before) {
  return std::make_shared<ComposeIso>(std::move(after), std::move(before));
}

IsoPtr powerIso(IsoPtr base, std::int64_t k);
IsoPtr conjugateIso(IsoPtr h, IsoPtr g);  // h g h^-1

Vertex applyPower(const Isometry& iso, std::int64_t k, const Vertex& v);

}  // namespace dirspace
