#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qrips/complex.hpp"
#include "qrips/metric.hpp"
#include "qrips/partition.hpp"

// Small-instance model of covers, relations and their complexes. Everything
// here is exhaustive (exponential in the instance size) and exists to check
// the pipeline's guarantees on tiny inputs, not to run on real data.

namespace qrips::lab {

using Mask = std::uint64_t;

/// Largest universe or index set accepted by the exhaustive constructions.
struct LabLimits {
  std::size_t max_size = 15;
};

inline constexpr std::size_t kAllDims = static_cast<std::size_t>(-1);

class CapExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Indexed family of nonempty subsets of {0..universe_size-1} whose union is
/// the universe. Sets are sorted.
struct Cover {
  std::size_t universe_size = 0;
  std::vector<std::vector<std::size_t>> sets;

  void validate() const {
    std::vector<bool> hit(universe_size, false);
    for (std::size_t i = 0; i < sets.size(); ++i) {
      if (sets[i].empty()) throw std::invalid_argument("cover set " + std::to_string(i) + " is empty");
      for (auto x : sets[i]) {
        if (x >= universe_size)
          throw std::invalid_argument("cover element " + std::to_string(x) + " out of range");
        hit[x] = true;
      }
    }
    if (std::find(hit.begin(), hit.end(), false) != hit.end())
      throw std::invalid_argument("cover sets do not cover the universe");
  }

  friend bool operator==(const Cover&, const Cover&) = default;
};

/// One set per line (sorted indices), lines sorted.
inline void write_cover(std::ostream& out, const Cover& c) {
  auto sets = c.sets;
  std::sort(sets.begin(), sets.end());
  for (const auto& s : sets) {
    for (std::size_t i = 0; i < s.size(); ++i) out << (i ? " " : "") << s[i];
    out << '\n';
  }
}

/// R subset of X x Y, row-major.
struct BinaryRelation {
  std::size_t nx = 0;
  std::size_t ny = 0;
  std::vector<bool> pairs;

  BinaryRelation() = default;
  BinaryRelation(std::size_t nx_, std::size_t ny_) : nx(nx_), ny(ny_), pairs(nx_ * ny_, false) {}

  bool related(std::size_t x, std::size_t y) const { return pairs[x * ny + y]; }
  void relate(std::size_t x, std::size_t y, bool value = true) { pairs[x * ny + y] = value; }

  BinaryRelation transpose() const {
    BinaryRelation t(ny, nx);
    for (std::size_t x = 0; x < nx; ++x)
      for (std::size_t y = 0; y < ny; ++y) t.relate(y, x, related(x, y));
    return t;
  }

  /// x R i iff x is in U_i.
  static BinaryRelation inclusion(const Cover& c) {
    BinaryRelation r(c.universe_size, c.sets.size());
    for (std::size_t i = 0; i < c.sets.size(); ++i)
      for (auto x : c.sets[i]) r.relate(x, i);
    return r;
  }
};

/// f(j) = index of the U-set containing V_j.
struct RefinementMap {
  std::vector<std::size_t> map;
  friend bool operator==(const RefinementMap&, const RefinementMap&) = default;
};

namespace detail {

inline void check_cap(std::size_t size, const LabLimits& limits, const char* what) {
  if (size > limits.max_size || size > 64)
    throw CapExceeded(std::string(what) + " of size " + std::to_string(size) +
                      " exceeds the small-instance cap of " + std::to_string(limits.max_size));
}

inline Mask to_mask(const std::vector<std::size_t>& set) {
  Mask m = 0;
  for (auto x : set) m |= Mask{1} << x;
  return m;
}

inline Simplex from_mask(Mask m) {
  Simplex s;
  while (m) {
    s.push_back(static_cast<std::size_t>(std::countr_zero(m)));
    m &= m - 1;
  }
  return s;
}

inline std::size_t clamp_size(std::size_t max_dim) {
  return max_dim == kAllDims ? kAllDims : max_dim + 1;
}

/// Adds every nonempty subset of `witness` with at most max_size elements.
inline void add_subsets(SimplicialComplex& k, Mask witness, std::size_t max_size) {
  for (Mask sub = witness; sub; sub = (sub - 1) & witness)
    if (static_cast<std::size_t>(std::popcount(sub)) <= max_size) k.simplices.insert(from_mask(sub));
}

/// Complex on `count` vertices whose simplices are the subsets of some
/// witness mask.
inline SimplicialComplex witnessed_complex(std::size_t count, const std::vector<Mask>& witnesses,
                                           std::size_t max_dim) {
  SimplicialComplex k{count, {}};
  auto sorted = witnesses;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (auto w : sorted) add_subsets(k, w, clamp_size(max_dim));
  return k;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Complexes of covers and relations

/// Dowker complexes (C_X(R), C_Y(R)): subsets of X with a common R-image,
/// and subsets of Y with a common R-preimage.
inline std::pair<SimplicialComplex, SimplicialComplex> dowker_pair(const BinaryRelation& r,
                                                                   std::size_t max_dim = kAllDims,
                                                                   LabLimits limits = {}) {
  detail::check_cap(r.nx, limits, "relation domain");
  detail::check_cap(r.ny, limits, "relation codomain");
  std::vector<Mask> columns(r.ny, 0), rows(r.nx, 0);
  for (std::size_t x = 0; x < r.nx; ++x)
    for (std::size_t y = 0; y < r.ny; ++y)
      if (r.related(x, y)) {
        columns[y] |= Mask{1} << x;
        rows[x] |= Mask{1} << y;
      }
  return {detail::witnessed_complex(r.nx, columns, max_dim),
          detail::witnessed_complex(r.ny, rows, max_dim)};
}

/// Index subsets with a nonempty common intersection.
inline SimplicialComplex nerve(const Cover& c, std::size_t max_dim = kAllDims, LabLimits limits = {}) {
  detail::check_cap(c.universe_size, limits, "cover universe");
  detail::check_cap(c.sets.size(), limits, "cover index set");
  return dowker_pair(BinaryRelation::inclusion(c), max_dim, limits).second;
}

/// Subsets of the universe contained in at least one cover set.
inline SimplicialComplex conerve(const Cover& c, std::size_t max_dim = kAllDims, LabLimits limits = {}) {
  detail::check_cap(c.universe_size, limits, "cover universe");
  std::vector<Mask> witnesses;
  for (const auto& s : c.sets) witnesses.push_back(detail::to_mask(s));
  return detail::witnessed_complex(c.universe_size, witnesses, max_dim);
}

// ---------------------------------------------------------------------------
// Metric covers

/// Closed balls B(x, r), one per point, indexed by their centre.
inline Cover ball_cover(const DistanceMatrix& dm, Scale r) {
  if (r < 0) throw std::invalid_argument("ball radius must be nonnegative");
  Cover c{dm.size(), {}};
  for (std::size_t i = 0; i < dm.size(); ++i) {
    std::vector<std::size_t> ball;
    for (std::size_t j = 0; j < dm.size(); ++j)
      if (dm(i, j) <= r) ball.push_back(j);
    c.sets.push_back(std::move(ball));
  }
  return c;
}

namespace detail {

/// Bron-Kerbosch with pivoting over bitmask adjacency.
inline void maximal_cliques(const std::vector<Mask>& adj, Mask current, Mask candidates, Mask excluded,
                            std::vector<Mask>& out) {
  if (!candidates && !excluded) {
    out.push_back(current);
    return;
  }
  const Mask pool = candidates | excluded;
  int best = -1;
  int best_cover = -1;
  for (Mask m = pool; m; m &= m - 1) {
    const int u = std::countr_zero(m);
    const int cover = std::popcount(candidates & adj[static_cast<std::size_t>(u)]);
    if (cover > best_cover) {
      best_cover = cover;
      best = u;
    }
  }
  Mask todo = candidates & ~adj[static_cast<std::size_t>(best)];
  while (todo) {
    const auto v = static_cast<std::size_t>(std::countr_zero(todo));
    const Mask bit = Mask{1} << v;
    todo &= todo - 1;
    maximal_cliques(adj, current | bit, candidates & adj[v], excluded & adj[v], out);
    candidates &= ~bit;
    excluded |= bit;
  }
}

}  // namespace detail

/// Maximal cliques of the graph joining points at distance <= r, i.e. the
/// maximal subsets of diameter <= r. Sets ordered lexicographically.
inline Cover maximal_clique_cover(const DistanceMatrix& dm, Scale r, LabLimits limits = {64}) {
  detail::check_cap(dm.size(), limits, "metric space");
  const auto n = dm.size();
  std::vector<Mask> adj(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && dm(i, j) <= r) adj[i] |= Mask{1} << j;
  std::vector<Mask> cliques;
  const Mask all = n == 64 ? ~Mask{0} : (Mask{1} << n) - 1;
  if (n > 0) detail::maximal_cliques(adj, 0, all, 0, cliques);
  Cover c{n, {}};
  for (auto m : cliques) c.sets.push_back(detail::from_mask(m));
  std::sort(c.sets.begin(), c.sets.end());
  return c;
}

// ---------------------------------------------------------------------------
// Quotients and pullbacks

/// Cover of the block set: set i lists the blocks meeting U_i.
inline Cover quotient_cover_space(const Cover& c, const Partition& p) {
  p.validate(c.universe_size);
  const auto label = p.labels();
  Cover q{p.blocks.size(), {}};
  for (const auto& s : c.sets) {
    std::vector<std::size_t> image;
    for (auto x : s) image.push_back(label[x]);
    std::sort(image.begin(), image.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());
    q.sets.push_back(std::move(image));
  }
  return q;
}

/// One set per block of the index partition: the union of its members.
inline Cover quotient_cover_index(const Cover& c, const Partition& index_blocks) {
  index_blocks.validate(c.sets.size());
  Cover q{c.universe_size, {}};
  for (const auto& block : index_blocks.blocks) {
    std::vector<std::size_t> merged;
    for (auto i : block) merged.insert(merged.end(), c.sets[i].begin(), c.sets[i].end());
    std::sort(merged.begin(), merged.end());
    merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
    q.sets.push_back(std::move(merged));
  }
  return q;
}

/// Replaces every set of a cover on the blocks of p by the union of its
/// blocks. The index set is unchanged.
inline Cover pullback_cover(const Cover& on_blocks, const Partition& p) {
  if (on_blocks.universe_size != p.blocks.size())
    throw std::invalid_argument("pullback: cover has " + std::to_string(on_blocks.universe_size) +
                                " points but the partition has " +
                                std::to_string(p.blocks.size()) + " blocks");
  Cover out{p.universe_size(), {}};
  for (const auto& s : on_blocks.sets) {
    std::vector<std::size_t> pre;
    for (auto b : s) pre.insert(pre.end(), p.blocks[b].begin(), p.blocks[b].end());
    std::sort(pre.begin(), pre.end());
    out.sets.push_back(std::move(pre));
  }
  return out;
}

/// Image of k under the projection vertex -> block index.
inline SimplicialComplex quotient_complex(const SimplicialComplex& k, const Partition& p) {
  p.validate(k.vertex_count);
  const auto label = p.labels();
  SimplicialComplex q{p.blocks.size(), {}};
  for (const auto& s : k.simplices) {
    Simplex image;
    for (auto v : s) image.push_back(label[v]);
    std::sort(image.begin(), image.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());
    q.simplices.insert(std::move(image));
  }
  return q;
}

// ---------------------------------------------------------------------------
// Refinements

/// True iff V_j is a subset of U_{f(j)} for every j.
inline bool is_refinement(const RefinementMap& f, const Cover& v, const Cover& u) {
  if (f.map.size() != v.sets.size()) return false;
  for (std::size_t j = 0; j < v.sets.size(); ++j) {
    if (f.map[j] >= u.sets.size()) return false;
    const auto& big = u.sets[f.map[j]];
    if (!std::includes(big.begin(), big.end(), v.sets[j].begin(), v.sets[j].end())) return false;
  }
  return true;
}

/// A refinement map from v into u, choosing the lowest-index container for
/// every set; nothing if some V_j fits in no U_i.
inline std::optional<RefinementMap> find_refinement(const Cover& v, const Cover& u) {
  if (v.universe_size != u.universe_size)
    throw std::invalid_argument("find_refinement: covers live on different universes");
  RefinementMap f;
  for (const auto& vs : v.sets) {
    std::optional<std::size_t> found;
    for (std::size_t i = 0; i < u.sets.size() && !found; ++i)
      if (std::includes(u.sets[i].begin(), u.sets[i].end(), vs.begin(), vs.end())) found = i;
    if (!found) return std::nullopt;
    f.map.push_back(*found);
  }
  return f;
}

/// True iff U_{f(j)} and U_{g(j)} intersect for every j.
inline bool contiguous(const RefinementMap& f, const RefinementMap& g, const Cover& u) {
  if (f.map.size() != g.map.size())
    throw std::invalid_argument("contiguous: maps have different domains");
  for (std::size_t j = 0; j < f.map.size(); ++j) {
    const auto& a = u.sets.at(f.map[j]);
    const auto& b = u.sets.at(g.map[j]);
    std::vector<std::size_t> common;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
    if (common.empty()) return false;
  }
  return true;
}

}  // namespace qrips::lab
