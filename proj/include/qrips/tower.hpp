#pragma once

#include <algorithm>
#include <cstddef>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "qrips/linkage.hpp"
#include "qrips/metric.hpp"
#include "qrips/text.hpp"
#include "qrips/union_find.hpp"

namespace qrips {

struct FilteredEdge {
  std::size_t u = 0;  // u < v
  std::size_t v = 0;
  Scale birth = 0.0;
  friend bool operator==(const FilteredEdge&, const FilteredEdge&) = default;
};

/// Weighted 1-skeleton of a flag filtration on n vertices, all born at 0.
/// Edges are kept in recording order; each unordered pair occurs once.
struct FilteredGraph {
  std::size_t n = 0;
  std::vector<FilteredEdge> edges;
  friend bool operator==(const FilteredGraph&, const FilteredGraph&) = default;
};

/// The 1-skeleton of the tower's equivalent filtration, built incrementally.
///
/// Vertices stay in the graph after they are contracted; only the active
/// ones receive new edges. Contracting cones the smaller active star into
/// the larger one, so the removed vertex becomes dominated and the flag
/// filtration keeps the tower's barcode.
class Skeleton {
 public:
  explicit Skeleton(std::size_t n) : uf_(n), active_(n, true), adjacency_(n) {}

  std::size_t n() const { return active_.size(); }
  bool active(std::size_t v) const { return active_[v]; }
  std::size_t representative(std::size_t v) { return uf_.find(v); }
  std::size_t active_count() const {
    return static_cast<std::size_t>(std::count(active_.begin(), active_.end(), true));
  }

  /// Records the edge between the representatives of u and v; an existing
  /// edge keeps the earlier birth. Edges inside one class are dropped.
  void add_edge(std::size_t u, std::size_t v, Scale d) {
    check_vertex(u);
    check_vertex(v);
    u = uf_.find(u);
    v = uf_.find(v);
    if (u == v || !active_[u] || !active_[v]) return;
    const auto it = adjacency_[u].find(v);
    if (it == adjacency_[u].end()) {
      adjacency_[u].emplace(v, edges_.size());
      adjacency_[v].emplace(u, edges_.size());
      edges_.push_back({std::min(u, v), std::max(u, v), d});
    } else if (d < edges_[it->second].birth) {
      edges_[it->second].birth = d;
    }
  }

  /// Contracts the classes of u and v at scale d. The vertex with the smaller
  /// active star is coned into the other (equal stars: the lower index
  /// survives) and deactivated.
  void contract(std::size_t u, std::size_t v, Scale d) {
    check_vertex(u);
    check_vertex(v);
    u = uf_.find(u);
    v = uf_.find(v);
    if (u == v)
      throw std::invalid_argument("contract: vertices already identified (" + std::to_string(u) +
                                  ")");
    if (!active_[u] || !active_[v])
      throw std::invalid_argument("contract: inactive vertex");
    auto star_u = active_star(u);
    auto star_v = active_star(v);
    // After this, u is the one being coned and v survives.
    if (star_u.size() > star_v.size() || (star_u.size() == star_v.size() && u < v)) {
      std::swap(u, v);
      std::swap(star_u, star_v);
    }
    for (auto w : star_u)
      if (w != v) add_edge(v, w, d);
    active_[u] = false;
    uf_.attach(u, v);
  }

  FilteredGraph graph() const { return {n(), edges_}; }

 private:
  void check_vertex(std::size_t v) const {
    if (v >= n())
      throw std::out_of_range("vertex " + std::to_string(v) + " outside 0.." +
                              std::to_string(n() - 1));
  }

  std::vector<std::size_t> active_star(std::size_t v) const {
    std::vector<std::size_t> out;
    for (const auto& [w, idx] : adjacency_[v])
      if (active_[w]) out.push_back(w);
    std::sort(out.begin(), out.end());
    return out;
  }

  UnionFind uf_;
  std::vector<bool> active_;
  std::vector<std::unordered_map<std::size_t, std::size_t>> adjacency_;  // neighbor -> edge slot
  std::vector<FilteredEdge> edges_;
};

/// Everything the tower pipeline produces.
struct QuotientTower {
  FilteredGraph graph;
  MergeHistory history;  // conservative linkage restricted to the edge list
  std::size_t active_vertices = 0;
};

/// Streams the sorted edges through conservative linkage and the skeleton
/// together; at the end of every tie batch the batch's merges are applied to
/// the skeleton as contractions at the batch distance.
inline QuotientTower build_quotient_tower(std::size_t n, const SortedEdgeList& e) {
  ConservativeLinkage linkage(n);
  Skeleton skeleton(n);
  QuotientTower out;
  out.history.n = n;
  const auto& edges = e.edges;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto& [u, v, d] = edges[i];
    linkage.add_edge(u, v);
    skeleton.add_edge(u, v, d);
    const bool batch_ends = i + 1 == edges.size() || edges[i + 1].dist != d;
    if (!batch_ends) continue;
    for (const auto& ev : linkage.contractions(d)) {
      skeleton.contract(ev.winner, ev.loser, ev.dist);
      out.history.events.push_back(ev);
    }
  }
  out.graph = skeleton.graph();
  out.active_vertices = skeleton.active_count();
  return out;
}

inline FilteredGraph build_filtered_skeleton(std::size_t n, const SortedEdgeList& e) {
  return build_quotient_tower(n, e).graph;
}

// ---------------------------------------------------------------------------
// Serialization

/// "n <count>" then one "u v birth" line per edge in recording order.
inline void write_filtered_graph(std::ostream& out, const FilteredGraph& g) {
  out << "n " << g.n << '\n';
  for (const auto& e : g.edges) out << e.u << ' ' << e.v << ' ' << text::format_real(e.birth) << '\n';
}

inline FilteredGraph read_filtered_graph(std::istream& in) {
  FilteredGraph g;
  std::string line;
  std::size_t row = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++row;
    if (text::trim(line).empty()) continue;
    const auto tok = text::split_whitespace(line);
    if (!have_header) {
      const auto n = tok.size() == 2 && tok[0] == "n" ? text::parse_index(tok[1]) : std::nullopt;
      if (!n) throw ParseError("expected header 'n <count>' at row " + std::to_string(row));
      g.n = *n;
      have_header = true;
      continue;
    }
    const auto u = tok.size() == 3 ? text::parse_index(tok[0]) : std::nullopt;
    const auto v = tok.size() == 3 ? text::parse_index(tok[1]) : std::nullopt;
    const auto d = tok.size() == 3 ? text::parse_real(tok[2]) : std::nullopt;
    if (!u || !v || !d || *u >= g.n || *v >= g.n || *u == *v)
      throw ParseError("malformed edge at row " + std::to_string(row));
    g.edges.push_back({std::min(*u, *v), std::max(*u, *v), *d});
  }
  if (!have_header) throw ParseError("missing header 'n <count>'");
  return g;
}

/// Sparse "i j d" triples, 0-based, as read by flag-complex persistence
/// tools that accept a sparse distance matrix.
inline void write_sparse(std::ostream& out, const FilteredGraph& g) {
  for (const auto& e : g.edges) out << e.u << ' ' << e.v << ' ' << text::format_real(e.birth) << '\n';
}

}  // namespace qrips
