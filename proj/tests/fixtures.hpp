#pragma once

// Shared fixtures and brute-force oracles for the test suites. Nothing here
// calls the library routine it is used to check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "qrips/qrips.hpp"

namespace fixtures {

using qrips::DistanceMatrix;
using qrips::Partition;

/// Line example: A=0, B=1, C=2 on the real line.
inline DistanceMatrix line3() {
  return DistanceMatrix::from_rows({{0, 1, 2}, {1, 0, 1}, {2, 1, 0}});
}

/// Unit-square corners p0=(0,0), p1=(1,0), p2=(1,1), p3=(0,1).
inline qrips::PointCloud square4() { return qrips::PointCloud(2, {0, 0, 1, 0, 1, 1, 0, 1}); }

inline DistanceMatrix square4_dm() {
  const double s = std::sqrt(2.0);
  return DistanceMatrix::from_rows({{0, 1, s, 1}, {1, 0, 1, s}, {s, 1, 0, 1}, {1, s, 1, 0}});
}

/// Uniform points in [0,1]^dim.
inline DistanceMatrix random_euclidean(std::size_t n, std::size_t dim, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> c(n * dim);
  for (auto& x : c) x = u(rng);
  return qrips::pairwise_distances(qrips::PointCloud(dim, std::move(c)));
}

/// Points on a small integer grid: many exact ties, possible duplicates.
inline DistanceMatrix random_grid(std::size_t n, std::size_t dim, std::size_t side,
                                  std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> u(0, side - 1);
  std::vector<double> c(n * dim);
  for (auto& x : c) x = static_cast<double>(u(rng));
  return qrips::pairwise_distances(qrips::PointCloud(dim, std::move(c)));
}

/// Random metric with integer values in {lo..2*lo}: always satisfies the
/// triangle inequality and is full of ties.
inline DistanceMatrix random_tie_metric(std::size_t n, int lo, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> u(lo, 2 * lo);
  DistanceMatrix dm(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) dm.set(i, j, u(rng));
  return dm;
}

inline DistanceMatrix permuted(const DistanceMatrix& dm, const std::vector<std::size_t>& perm) {
  DistanceMatrix out(dm.size());
  for (std::size_t i = 0; i < dm.size(); ++i)
    for (std::size_t j = 0; j < dm.size(); ++j) out(perm[i], perm[j]) = dm(i, j);
  return out;
}

/// Distinct off-diagonal values, ascending.
inline std::vector<double> critical_scales(const DistanceMatrix& dm) {
  std::vector<double> out;
  for (std::size_t i = 0; i < dm.size(); ++i)
    for (std::size_t j = i + 1; j < dm.size(); ++j) out.push_back(dm(i, j));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline double diameter(const std::vector<std::size_t>& block, const DistanceMatrix& dm) {
  double d = 0;
  for (auto a : block)
    for (auto b : block) d = std::max(d, dm(a, b));
  return d;
}

inline Partition canonical(Partition p) { return p.canonicalize(); }

// ---------------------------------------------------------------------------
// Linkage oracles, straight from the definitions on the distance matrix.

inline double complete_link(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b,
                            const DistanceMatrix& dm) {
  double d = 0;
  for (auto x : a)
    for (auto y : b) d = std::max(d, dm(x, y));
  return d;
}

/// Conservative partitions at every critical scale: starting from the
/// previous partition, merge every connected component of the graph
/// "complete link <= r" that is a clique; repeat until stable.
inline std::vector<std::pair<double, Partition>> conservative_oracle(const DistanceMatrix& dm) {
  const auto n = dm.size();
  Partition p = Partition::singletons(n);
  std::vector<std::pair<double, Partition>> out;
  auto scales = critical_scales(dm);
  scales.insert(scales.begin(), 0.0);
  for (double r : scales) {
    bool merged = true;
    while (merged) {
      merged = false;
      const auto m = p.blocks.size();
      std::vector<std::vector<bool>> adj(m, std::vector<bool>(m, false));
      for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b)
          adj[a][b] = a != b && complete_link(p.blocks[a], p.blocks[b], dm) <= r;
      std::vector<int> comp(m, -1);
      int nc = 0;
      for (std::size_t s = 0; s < m; ++s) {
        if (comp[s] >= 0) continue;
        std::vector<std::size_t> stack{s};
        comp[s] = nc;
        while (!stack.empty()) {
          auto a = stack.back();
          stack.pop_back();
          for (std::size_t b = 0; b < m; ++b)
            if (adj[a][b] && comp[b] < 0) {
              comp[b] = nc;
              stack.push_back(b);
            }
        }
        ++nc;
      }
      Partition next;
      for (int c = 0; c < nc; ++c) {
        std::vector<std::size_t> members;
        for (std::size_t a = 0; a < m; ++a)
          if (comp[a] == c) members.push_back(a);
        bool clique = true;
        for (auto a : members)
          for (auto b : members)
            if (a != b && !adj[a][b]) clique = false;
        if (clique && members.size() > 1) {
          merged = true;
          std::vector<std::size_t> block;
          for (auto a : members) block.insert(block.end(), p.blocks[a].begin(), p.blocks[a].end());
          next.blocks.push_back(block);
        } else {
          for (auto a : members) next.blocks.push_back(p.blocks[a]);
        }
      }
      p = canonical(next);
    }
    out.emplace_back(r, p);
  }
  return out;
}

/// Naive agglomerative complete linkage (assumes distinct distances): merge
/// the pair of blocks with the smallest complete link, record partitions.
inline std::vector<std::pair<double, Partition>> naive_complete_linkage(const DistanceMatrix& dm) {
  Partition p = Partition::singletons(dm.size());
  std::vector<std::pair<double, Partition>> out;
  while (p.blocks.size() > 1) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t ba = 0, bb = 0;
    for (std::size_t a = 0; a < p.blocks.size(); ++a)
      for (std::size_t b = a + 1; b < p.blocks.size(); ++b) {
        const double l = complete_link(p.blocks[a], p.blocks[b], dm);
        if (l < best) {
          best = l;
          ba = a;
          bb = b;
        }
      }
    p.blocks[ba].insert(p.blocks[ba].end(), p.blocks[bb].begin(), p.blocks[bb].end());
    p.blocks.erase(p.blocks.begin() + static_cast<long>(bb));
    p = canonical(p);
    out.emplace_back(best, p);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Combinatorial oracles

/// All subsets of {0..n-1} as sorted vectors (n small).
inline std::vector<std::vector<std::size_t>> all_subsets(std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  for (std::uint64_t m = 1; m < (std::uint64_t{1} << n); ++m) {
    std::vector<std::size_t> s;
    for (std::size_t b = 0; b < n; ++b)
      if (m >> b & 1) s.push_back(b);
    out.push_back(s);
  }
  return out;
}

inline bool subset_of(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

/// Maximal subsets of diameter <= r, by checking every subset.
inline std::vector<std::vector<std::size_t>> brute_maximal_cliques(const DistanceMatrix& dm, double r) {
  std::vector<std::vector<std::size_t>> cliques;
  for (const auto& s : all_subsets(dm.size()))
    if (diameter(s, dm) <= r) cliques.push_back(s);
  std::vector<std::vector<std::size_t>> maximal;
  for (const auto& s : cliques) {
    bool is_max = true;
    for (const auto& t : cliques)
      if (t.size() > s.size() && subset_of(s, t)) is_max = false;
    if (is_max) maximal.push_back(s);
  }
  std::sort(maximal.begin(), maximal.end());
  return maximal;
}

/// Exact bottleneck by exhaustive search over partial matchings (tiny
/// diagrams only). Additive L-infinity costs.
inline double brute_bottleneck(std::vector<std::pair<double, double>> a,
                               std::vector<std::pair<double, double>> b) {
  auto diag = [](std::pair<double, double> p) { return (p.second - p.first) / 2; };
  auto cost = [](std::pair<double, double> x, std::pair<double, double> y) {
    return std::max(std::abs(x.first - y.first), std::abs(x.second - y.second));
  };
  double best = std::numeric_limits<double>::infinity();
  std::vector<bool> used(b.size(), false);
  std::function<void(std::size_t, double)> rec = [&](std::size_t i, double cur) {
    if (cur >= best) return;
    if (i == a.size()) {
      double c = cur;
      for (std::size_t j = 0; j < b.size(); ++j)
        if (!used[j]) c = std::max(c, diag(b[j]));
      best = std::min(best, c);
      return;
    }
    rec(i + 1, std::max(cur, diag(a[i])));
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      used[j] = true;
      rec(i + 1, std::max(cur, cost(a[i], b[j])));
      used[j] = false;
    }
  };
  rec(0, 0.0);
  return best;
}

// ---------------------------------------------------------------------------
// Random covers and partitions

/// Random cover of {0..universe-1} by `count` nonempty sets.
inline qrips::lab::Cover random_cover(std::size_t universe, std::size_t count, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(0.35);
  std::uniform_int_distribution<std::size_t> pick_set(0, count - 1);
  std::uniform_int_distribution<std::size_t> pick_point(0, universe - 1);
  qrips::lab::Cover c{universe, std::vector<std::vector<std::size_t>>(count)};
  for (auto& s : c.sets)
    for (std::size_t x = 0; x < universe; ++x)
      if (coin(rng)) s.push_back(x);
  for (auto& s : c.sets)
    if (s.empty()) s.push_back(pick_point(rng));
  for (std::size_t x = 0; x < universe; ++x) {
    bool hit = false;
    for (const auto& s : c.sets) hit = hit || std::find(s.begin(), s.end(), x) != s.end();
    if (!hit) c.sets[pick_set(rng)].push_back(x);
  }
  for (auto& s : c.sets) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }
  return c;
}

/// Random partition of {0..n-1} into at most n/2 + 1 blocks.
inline Partition random_partition(std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> label(0, n > 1 ? n / 2 : 0);
  qrips::UnionFind uf(n);
  std::vector<std::size_t> l(n);
  for (auto& x : l) x = label(rng);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (l[i] == l[j]) uf.unite(i, j);
  return Partition::from_union_find(uf);
}

}  // namespace fixtures
