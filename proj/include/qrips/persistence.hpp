#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "qrips/complex.hpp"
#include "qrips/metric.hpp"
#include "qrips/text.hpp"
#include "qrips/tower.hpp"

namespace qrips {

struct FilteredSimplex {
  Simplex vertices;
  Scale birth = 0.0;
  std::size_t dim() const { return vertices.size() - 1; }
  friend bool operator==(const FilteredSimplex&, const FilteredSimplex&) = default;
};

/// Simplices in filtration order: (birth, dim, lexicographic).
struct FilteredComplex {
  std::vector<FilteredSimplex> simplices;

  void sort() {
    std::sort(simplices.begin(), simplices.end(), [](const auto& a, const auto& b) {
      return std::forward_as_tuple(a.birth, a.vertices.size(), a.vertices) <
             std::forward_as_tuple(b.birth, b.vertices.size(), b.vertices);
    });
  }

  std::vector<std::size_t> counts_by_dimension() const {
    std::vector<std::size_t> out;
    for (const auto& s : simplices) {
      if (out.size() <= s.dim()) out.resize(s.dim() + 1, 0);
      ++out[s.dim()];
    }
    return out;
  }
};

struct PersistenceInterval {
  std::size_t degree = 0;
  Scale birth = 0.0;
  Scale death = kUnbounded;
  bool essential() const { return std::isinf(death); }
  friend bool operator==(const PersistenceInterval&, const PersistenceInterval&) = default;
};

/// Multiset of intervals, kept sorted by (degree, birth, death).
struct Barcode {
  std::vector<PersistenceInterval> intervals;

  void sort() {
    std::sort(intervals.begin(), intervals.end(), [](const auto& a, const auto& b) {
      return std::tie(a.degree, a.birth, a.death) < std::tie(b.degree, b.birth, b.death);
    });
  }
  std::vector<PersistenceInterval> in_degree(std::size_t k) const {
    std::vector<PersistenceInterval> out;
    for (const auto& i : intervals)
      if (i.degree == k) out.push_back(i);
    return out;
  }
  /// Drops every interval of degree > max_degree.
  Barcode truncated(std::size_t max_degree) const {
    Barcode out;
    for (const auto& i : intervals)
      if (i.degree <= max_degree) out.intervals.push_back(i);
    return out;
  }

  friend bool operator==(const Barcode&, const Barcode&) = default;
};

/// Per-degree ranks of Z/2 homology.
using BettiVector = std::vector<std::size_t>;

/// Equal up to trailing zeros.
inline bool same_betti(const BettiVector& a, const BettiVector& b) {
  const auto n = std::max(a.size(), b.size());
  for (std::size_t k = 0; k < n; ++k)
    if ((k < a.size() ? a[k] : 0) != (k < b.size() ? b[k] : 0)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Flag filtrations

namespace detail {

struct SimplexHash {
  std::size_t operator()(const Simplex& s) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto v : s) h = (h ^ v) * 1099511628211ull;
    return h;
  }
};

/// Forward adjacency (higher-index neighbours, ascending) with edge births.
class FlagGraph {
 public:
  explicit FlagGraph(const FilteredGraph& g) : up_(g.n) {
    for (const auto& e : g.edges) {
      const auto [a, b] = std::minmax(e.u, e.v);
      up_[a].push_back({b, e.birth});
    }
    for (auto& nb : up_)
      std::sort(nb.begin(), nb.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  }

  std::size_t n() const { return up_.size(); }

  /// Calls visit(vertices, birth) for every clique with at most max_size
  /// vertices (including single vertices at birth 0).
  template <typename Visit>
  void for_each_clique(std::size_t max_size, Visit&& visit) const {
    Simplex current;
    for (std::size_t v = 0; v < n(); ++v) {
      current.assign(1, v);
      std::vector<std::pair<std::size_t, Scale>> candidates = up_[v];
      visit(current, 0.0);
      extend(current, 0.0, candidates, max_size, visit);
    }
  }

 private:
  template <typename Visit>
  void extend(Simplex& current, Scale birth,
              const std::vector<std::pair<std::size_t, Scale>>& candidates, std::size_t max_size,
              Visit& visit) const {
    if (current.size() >= max_size) return;
    // candidates: common higher neighbours of `current`, with the max birth
    // of the edges joining each to current.
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      const auto [w, w_birth] = candidates[c];
      const Scale b = std::max(birth, w_birth);
      current.push_back(w);
      visit(current, b);
      if (current.size() < max_size) {
        std::vector<std::pair<std::size_t, Scale>> next;
        const auto& nb = up_[w];
        std::size_t i = c + 1, j = 0;
        while (i < candidates.size() && j < nb.size()) {
          if (candidates[i].first < nb[j].first) {
            ++i;
          } else if (nb[j].first < candidates[i].first) {
            ++j;
          } else {
            next.push_back({nb[j].first, std::max(candidates[i].second, nb[j].second)});
            ++i;
            ++j;
          }
        }
        if (!next.empty()) extend(current, b, next, max_size, visit);
      }
      current.pop_back();
    }
  }

  std::vector<std::vector<std::pair<std::size_t, Scale>>> up_;
};

inline FilteredGraph threshold_graph(const DistanceMatrix& dm, Scale threshold) {
  FilteredGraph g{dm.size(), {}};
  for (const auto& e : sorted_edges(dm, threshold).edges) g.edges.push_back({e.u, e.v, e.dist});
  return g;
}

}  // namespace detail

/// Flag complex of `g` up to dimension max_dim: every clique of at most
/// max_dim + 1 vertices, born at the latest of its edges.
inline FilteredComplex flag_filtration(const FilteredGraph& g, std::size_t max_dim) {
  FilteredComplex fc;
  detail::FlagGraph(g).for_each_clique(max_dim + 1, [&](const Simplex& s, Scale b) {
    fc.simplices.push_back({s, b});
  });
  fc.sort();
  return fc;
}

/// Simplex counts per dimension 0..max_dim of the flag complex, without
/// materializing it.
inline std::vector<std::size_t> count_flag_simplices(const FilteredGraph& g, std::size_t max_dim) {
  std::vector<std::size_t> counts(max_dim + 1, 0);
  detail::FlagGraph(g).for_each_clique(max_dim + 1,
                                       [&](const Simplex& s, Scale) { ++counts[s.size() - 1]; });
  return counts;
}

struct RipsLimits {
  std::size_t max_points = 1000;
};

/// Vietoris-Rips filtration: simplices of diameter <= threshold, born at
/// their diameter.
inline FilteredComplex rips_filtration(const DistanceMatrix& dm, Scale threshold,
                                       std::size_t max_dim, RipsLimits limits = {}) {
  if (dm.size() > limits.max_points)
    throw std::length_error("Rips filtration on " + std::to_string(dm.size()) +
                            " points exceeds the cap of " + std::to_string(limits.max_points));
  return flag_filtration(detail::threshold_graph(dm, threshold), max_dim);
}

inline std::vector<std::size_t> count_rips_simplices(const DistanceMatrix& dm, Scale threshold,
                                                     std::size_t max_dim) {
  return count_flag_simplices(detail::threshold_graph(dm, threshold), max_dim);
}

// ---------------------------------------------------------------------------
// Reduction

struct PersistenceOptions {
  bool keep_zero_length = false;
};

class FiltrationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline std::string simplex_name(const Simplex& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out + "}";
}

/// Column of the boundary matrix over Z/2: sorted row indices.
using Column = std::vector<std::uint32_t>;

inline void add_into(Column& target, const Column& source) {
  Column out;
  out.reserve(target.size() + source.size());
  std::set_symmetric_difference(target.begin(), target.end(), source.begin(), source.end(),
                                std::back_inserter(out));
  target.swap(out);
}

}  // namespace detail

/// Z/2 persistent homology by standard column reduction with clearing.
/// Every simplex of the top dimension that stays unpaired is reported as an
/// essential class in that degree; callers wanting correct degree-k bars
/// supply simplices up to dimension k+1 and truncate.
inline Barcode compute_persistence(const FilteredComplex& fc, PersistenceOptions opts = {}) {
  const auto& s = fc.simplices;
  const auto m = s.size();
  std::unordered_map<Simplex, std::uint32_t, detail::SimplexHash> index;
  index.reserve(m);
  std::size_t top_dim = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (s[i].vertices.empty()) throw FiltrationError("empty simplex in filtration");
    index.emplace(s[i].vertices, static_cast<std::uint32_t>(i));
    top_dim = std::max(top_dim, s[i].dim());
  }

  std::vector<detail::Column> columns(m);
  std::vector<std::vector<std::uint32_t>> by_dim(top_dim + 1);
  for (std::size_t j = 0; j < m; ++j) {
    const auto& verts = s[j].vertices;
    by_dim[s[j].dim()].push_back(static_cast<std::uint32_t>(j));
    if (verts.size() < 2) continue;
    Simplex face(verts.size() - 1);
    for (std::size_t drop = 0; drop < verts.size(); ++drop) {
      for (std::size_t k = 0, f = 0; k < verts.size(); ++k)
        if (k != drop) face[f++] = verts[k];
      const auto it = index.find(face);
      if (it == index.end() || it->second >= j || s[it->second].birth > s[j].birth)
        throw FiltrationError("face " + detail::simplex_name(face) + " of simplex " +
                              detail::simplex_name(verts) + " is missing or enters later");
      columns[j].push_back(it->second);
    }
    std::sort(columns[j].begin(), columns[j].end());
  }

  constexpr auto kNone = static_cast<std::uint32_t>(-1);
  std::vector<std::uint32_t> pivot_owner(m, kNone);  // row -> column with that low
  std::vector<bool> cleared(m, false);
  std::vector<bool> paired(m, false);
  Barcode bc;
  auto emit = [&](std::size_t degree, Scale birth, Scale death) {
    if (birth == death && !opts.keep_zero_length) return;
    bc.intervals.push_back({degree, birth, death});
  };

  for (std::size_t d = top_dim + 1; d-- > 1;) {
    for (auto j : by_dim[d]) {
      if (cleared[j]) continue;
      auto& col = columns[j];
      while (!col.empty() && pivot_owner[col.back()] != kNone)
        detail::add_into(col, columns[pivot_owner[col.back()]]);
      if (col.empty()) continue;
      const auto low = col.back();
      pivot_owner[low] = j;
      cleared[low] = true;  // its own column would reduce to zero
      paired[low] = paired[j] = true;
      emit(d - 1, s[low].birth, s[j].birth);
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (paired[i]) continue;
    // Unpaired with a zero reduced column: a cycle that never dies.
    if (s[i].dim() == 0 || columns[i].empty()) emit(s[i].dim(), s[i].birth, kUnbounded);
  }
  bc.sort();
  return bc;
}

/// Barcode in degrees 0..max_degree of the flag filtration of g.
inline Barcode flag_persistence(const FilteredGraph& g, std::size_t max_degree,
                                PersistenceOptions opts = {}) {
  return compute_persistence(flag_filtration(g, max_degree + 1), opts).truncated(max_degree);
}

inline Barcode rips_persistence(const DistanceMatrix& dm, Scale threshold, std::size_t max_degree,
                                PersistenceOptions opts = {}, RipsLimits limits = {}) {
  return compute_persistence(rips_filtration(dm, threshold, max_degree + 1, limits), opts)
      .truncated(max_degree);
}

// ---------------------------------------------------------------------------
// Static homology

namespace detail {

/// Rank over Z/2 of the boundary map from k-simplices to (k-1)-simplices,
/// by dense Gaussian elimination on bit rows.
inline std::size_t boundary_rank(const std::vector<Simplex>& higher,
                                 const std::vector<Simplex>& lower) {
  if (higher.empty() || lower.empty()) return 0;
  std::unordered_map<Simplex, std::size_t, SimplexHash> row_of;
  for (std::size_t i = 0; i < lower.size(); ++i) row_of.emplace(lower[i], i);
  const std::size_t words = (lower.size() + 63) / 64;
  std::vector<std::vector<std::uint64_t>> rows;  // one bit vector per higher simplex
  rows.reserve(higher.size());
  for (const auto& h : higher) {
    std::vector<std::uint64_t> bits(words, 0);
    for (std::size_t drop = 0; drop < h.size(); ++drop) {
      Simplex face;
      for (std::size_t k = 0; k < h.size(); ++k)
        if (k != drop) face.push_back(h[k]);
      const auto r = row_of.at(face);
      bits[r / 64] ^= std::uint64_t{1} << (r % 64);
    }
    rows.push_back(std::move(bits));
  }
  std::size_t rank = 0;
  for (std::size_t bit = 0; bit < lower.size() && rank < rows.size(); ++bit) {
    const auto w = bit / 64;
    const auto mask = std::uint64_t{1} << (bit % 64);
    std::size_t pivot = rank;
    while (pivot < rows.size() && !(rows[pivot][w] & mask)) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t r = 0; r < rows.size(); ++r)
      if (r != rank && (rows[r][w] & mask))
        for (std::size_t x = 0; x < words; ++x) rows[r][x] ^= rows[rank][x];
    ++rank;
  }
  return rank;
}

}  // namespace detail

struct BettiLimits {
  std::size_t max_simplices = 200000;
};

/// Betti numbers over Z/2, degrees 0..dim(k). Empty complex gives {}.
inline BettiVector betti(const SimplicialComplex& k, BettiLimits limits = {}) {
  if (k.simplices.size() > limits.max_simplices)
    throw std::length_error("complex with " + std::to_string(k.simplices.size()) +
                            " simplices exceeds the Betti cap");
  const auto top = k.dimension();
  if (top < 0) return {};
  std::vector<std::vector<Simplex>> by_dim(static_cast<std::size_t>(top) + 1);
  for (const auto& s : k.simplices) by_dim[s.size() - 1].push_back(s);
  std::vector<std::size_t> rank(by_dim.size() + 1, 0);  // rank[d] = rank of boundary on d-simplices
  for (std::size_t d = 1; d < by_dim.size(); ++d)
    rank[d] = detail::boundary_rank(by_dim[d], by_dim[d - 1]);
  BettiVector out(by_dim.size());
  for (std::size_t d = 0; d < by_dim.size(); ++d)
    out[d] = by_dim[d].size() - rank[d] - rank[d + 1];
  return out;
}

/// Filtered complex with every simplex of `k` born at 0.
inline FilteredComplex static_filtration(const SimplicialComplex& k) {
  FilteredComplex fc;
  for (const auto& s : k.simplices) fc.simplices.push_back({s, 0.0});
  fc.sort();
  return fc;
}

// ---------------------------------------------------------------------------
// Barcode text

/// One "degree birth death" line per interval; "inf" for essential classes.
inline void write_barcode(std::ostream& out, const Barcode& bc) {
  for (const auto& i : bc.intervals)
    out << i.degree << ' ' << text::format_real(i.birth) << ' ' << text::format_real(i.death)
        << '\n';
}

inline Barcode read_barcode(std::istream& in) {
  Barcode bc;
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (text::trim(line).empty()) continue;
    const auto tok = text::split_whitespace(line);
    const auto k = tok.size() == 3 ? text::parse_index(tok[0]) : std::nullopt;
    const auto b = tok.size() == 3 ? text::parse_real(tok[1]) : std::nullopt;
    const auto d = tok.size() == 3 ? text::parse_real_or_inf(tok[2]) : std::nullopt;
    if (!k || !b || !d || *d < *b) throw ParseError("malformed interval at row " + std::to_string(row));
    bc.intervals.push_back({*k, *b, *d});
  }
  bc.sort();
  return bc;
}

}  // namespace qrips
