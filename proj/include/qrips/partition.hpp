#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "qrips/union_find.hpp"

namespace qrips {

/// A partition of {0..n-1} into disjoint nonempty blocks.
///
/// Canonical form: every block sorted ascending, blocks ordered by their
/// smallest element. Two partitions are equal iff their canonical forms are.
struct Partition {
  std::vector<std::vector<std::size_t>> blocks;

  std::size_t universe_size() const {
    std::size_t n = 0;
    for (const auto& b : blocks) n += b.size();
    return n;
  }

  /// Block index of every element.
  std::vector<std::size_t> labels() const {
    std::vector<std::size_t> out(universe_size());
    for (std::size_t k = 0; k < blocks.size(); ++k)
      for (auto x : blocks[k]) out.at(x) = k;
    return out;
  }

  Partition& canonicalize() {
    for (auto& b : blocks) std::sort(b.begin(), b.end());
    std::sort(blocks.begin(), blocks.end(), [](const auto& a, const auto& b) {
      if (a.empty() || b.empty()) return a.size() < b.size();
      return a.front() < b.front();
    });
    return *this;
  }

  /// Throws std::invalid_argument unless the blocks partition {0..n-1}.
  void validate(std::size_t n) const {
    std::vector<bool> seen(n, false);
    std::size_t count = 0;
    for (std::size_t k = 0; k < blocks.size(); ++k) {
      if (blocks[k].empty())
        throw std::invalid_argument("partition block " + std::to_string(k) + " is empty");
      for (auto x : blocks[k]) {
        if (x >= n)
          throw std::invalid_argument("partition element " + std::to_string(x) +
                                      " out of range");
        if (seen[x])
          throw std::invalid_argument("partition element " + std::to_string(x) +
                                      " appears twice");
        seen[x] = true;
        ++count;
      }
    }
    if (count != n) throw std::invalid_argument("partition does not cover the universe");
  }

  static Partition singletons(std::size_t n) {
    Partition p;
    p.blocks.reserve(n);
    for (std::size_t i = 0; i < n; ++i) p.blocks.push_back({i});
    return p;
  }

  static Partition from_union_find(UnionFind& uf) {
    const auto n = uf.size();
    std::vector<std::size_t> slot(n, n);
    Partition p;
    for (std::size_t i = 0; i < n; ++i) {
      const auto r = uf.find(i);
      if (slot[r] == n) {
        slot[r] = p.blocks.size();
        p.blocks.emplace_back();
      }
      p.blocks[slot[r]].push_back(i);
    }
    return p;  // already canonical: blocks appear in order of their minimum
  }

  friend bool operator==(const Partition&, const Partition&) = default;
};

}  // namespace qrips
