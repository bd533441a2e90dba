#pragma once

#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace qrips {

/// Disjoint-set forest with path compression.
///
/// Two ways to join classes: unite() picks the root by size, attach() makes
/// the caller's chosen root survive. Linkage and coning both need the latter
/// because per-root bookkeeping lives at a specific representative.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n = 0) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t size() const { return parent_.size(); }

  std::size_t find(std::size_t x) {
    std::size_t root = x;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[x] != root) {
      const auto next = parent_[x];
      parent_[x] = root;
      x = next;
    }
    return root;
  }

  bool same(std::size_t a, std::size_t b) { return find(a) == find(b); }

  /// Joins the classes of a and b; returns the surviving root.
  std::size_t unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return a;
    if (size_[a] < size_[b] || (size_[a] == size_[b] && b < a)) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    return a;
  }

  /// Points the root `child` at the root `root`. Both must be distinct roots.
  void attach(std::size_t child, std::size_t root) {
    if (parent_[child] != child || parent_[root] != root || child == root)
      throw std::invalid_argument("UnionFind::attach expects two distinct roots");
    parent_[child] = root;
    size_[root] += size_[child];
  }

  std::size_t class_size(std::size_t x) { return size_[find(x)]; }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

}  // namespace qrips
