#include "dirspace/inverse_limit.hpp"

#include <algorithm>
#include <set>

namespace dirspace {

void InverseSystem::validate() const {
  if (sizes.empty()) fail(Errc::Incompatible, "inverse system needs at least one level");
  for (std::size_t s : sizes)
    if (s == 0) fail(Errc::Incompatible, "inverse system levels must be nonempty");
  if (consecutive.size() + 1 != sizes.size())
    fail(Errc::Incompatible, "inverse system needs one connecting map per consecutive pair");
  for (std::size_t i = 0; i < consecutive.size(); ++i) {
    if (consecutive[i].size() != sizes[i + 1])
      fail(Errc::Incompatible, "connecting map " + std::to_string(i + 1) + " has wrong domain");
    for (int img : consecutive[i]) {
      if (img < 0 || static_cast<std::size_t>(img) >= sizes[i])
        fail(Errc::Incompatible, "connecting map " + std::to_string(i + 1) + " leaves its codomain");
    }
  }
}

int InverseSystem::map(std::size_t i, std::size_t j, int y) const {
  if (i > j || i == 0 || j > levels()) fail(Errc::Incompatible, "bad map indices");
  int cur = y;
  for (std::size_t level = j; level > i; --level) cur = consecutive[level - 2][static_cast<std::size_t>(cur)];
  return cur;
}

InverseLimitResult solveInverseLimit(const InverseSystem& sys) {
  sys.validate();
  const std::size_t d = sys.levels();

  InverseLimitResult out;
  out.sizeBound = *std::max_element(sys.sizes.begin(), sys.sizes.end());

  // Threads are in bijection with the top level: project each top element.
  std::vector<std::vector<int>> threads;
  threads.reserve(sys.sizes[d - 1]);
  for (std::size_t z = 0; z < sys.sizes[d - 1]; ++z) {
    std::vector<int> t(d);
    t[d - 1] = static_cast<int>(z);
    for (std::size_t i = d - 1; i > 0; --i)
      t[i - 1] = sys.consecutive[i - 1][static_cast<std::size_t>(t[i])];
    threads.push_back(std::move(t));
  }
  out.threadCount = threads.size();

  for (std::size_t i = 0; i < d; ++i) {
    std::set<int> image;
    for (const auto& t : threads) image.insert(t[i]);
    out.imageSizes.push_back(image.size());
  }

  // Pigeonhole refinement: majority element level by level.
  std::vector<std::size_t> alive(threads.size());
  for (std::size_t i = 0; i < alive.size(); ++i) alive[i] = i;
  for (std::size_t level = 0; level < d; ++level) {
    std::vector<std::size_t> hits(sys.sizes[level], 0);
    for (std::size_t idx : alive) ++hits[static_cast<std::size_t>(threads[idx][level])];
    int best = -1;
    std::size_t bestHits = 0;
    for (std::size_t y = 0; y < hits.size(); ++y) {
      if (hits[y] > bestHits) {
        bestHits = hits[y];
        best = static_cast<int>(y);
      }
    }
    std::vector<std::size_t> next;
    for (std::size_t idx : alive)
      if (threads[idx][level] == best) next.push_back(idx);
    alive = std::move(next);
    out.thread.push_back(best);
  }
  return out;
}

bool isThread(const InverseSystem& sys, const std::vector<int>& candidate) {
  if (candidate.size() != sys.levels()) return false;
  for (std::size_t i = 0; i < sys.levels(); ++i) {
    if (candidate[i] < 0 || static_cast<std::size_t>(candidate[i]) >= sys.sizes[i]) return false;
  }
  for (std::size_t i = 0; i + 1 < sys.levels(); ++i) {
    if (sys.consecutive[i][static_cast<std::size_t>(candidate[i + 1])] != candidate[i]) return false;
  }
  return true;
}

}  // namespace dirspace
