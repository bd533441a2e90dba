#pragma once

#include <algorithm>
#include <cstddef>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "qrips/metric.hpp"
#include "qrips/partition.hpp"
#include "qrips/text.hpp"
#include "qrips/union_find.hpp"

namespace qrips {

/// `loser` was absorbed into `winner` at scale `dist`. Both are cluster
/// representatives (original point indices) at the time of the merge.
struct MergeEvent {
  std::size_t winner = 0;
  std::size_t loser = 0;
  Scale dist = 0.0;
  friend bool operator==(const MergeEvent&, const MergeEvent&) = default;
};

struct MergeHistory {
  std::size_t n = 0;
  std::vector<MergeEvent> events;
};

namespace detail {

inline void check_endpoints(std::size_t n, const Edge& e) {
  if (e.u >= n || e.v >= n)
    throw std::out_of_range("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                            ") has an endpoint outside 0.." + std::to_string(n - 1));
}

}  // namespace detail

/// Cluster bookkeeping shared by both linkage variants: union-find, cluster
/// sizes and the number of original edges seen between every pair of
/// clusters. A pair (A, B) is saturated when that count reaches
/// size[A] * size[B], i.e. every cross pair is within the current scale.
class ClusterState {
 public:
  explicit ClusterState(std::size_t n) : uf_(n), size_(n, 1), edges_(n) {}

  std::size_t n() const { return size_.size(); }
  std::size_t find(std::size_t x) { return uf_.find(x); }
  std::size_t size(std::size_t root) const { return size_[root]; }
  std::size_t edge_count(std::size_t a, std::size_t b) const {
    const auto it = edges_[a].find(b);
    return it == edges_[a].end() ? 0 : it->second;
  }
  std::size_t neighbor_count(std::size_t root) const { return edges_[root].size(); }
  const std::unordered_map<std::size_t, std::size_t>& neighbors(std::size_t root) const {
    return edges_[root];
  }
  bool saturated(std::size_t a, std::size_t b) const {
    return edge_count(a, b) == size_[a] * size_[b];
  }

  /// Counts edge (u, v) between their clusters (nothing if they share one).
  /// Returns the two roots.
  std::pair<std::size_t, std::size_t> count_edge(std::size_t u, std::size_t v) {
    const auto ru = uf_.find(u);
    const auto rv = uf_.find(v);
    if (ru != rv) {
      ++edges_[ru][rv];
      ++edges_[rv][ru];
    }
    return {ru, rv};
  }

  /// Absorbs root `loser` into root `winner`, folding its edge counts.
  void merge(std::size_t winner, std::size_t loser) {
    uf_.attach(loser, winner);
    size_[winner] += size_[loser];
    auto moved = std::move(edges_[loser]);
    edges_[loser].clear();
    for (const auto& [x, count] : moved) {
      if (x == winner) continue;
      edges_[winner][x] += count;
      edges_[x][winner] += count;
      edges_[x].erase(loser);
    }
    edges_[winner].erase(loser);
  }

 private:
  UnionFind uf_;
  std::vector<std::size_t> size_;
  std::vector<std::unordered_map<std::size_t, std::size_t>> edges_;
};

/// Standard complete linkage over a sorted edge stream: a pair of clusters
/// merges as soon as the edge just processed saturates it. With ties the
/// result depends on edge order; kept as the reference method.
inline MergeHistory complete_linkage(std::size_t n, const SortedEdgeList& e) {
  MergeHistory h{n, {}};
  ClusterState state(n);
  for (const auto& edge : e.edges) {
    detail::check_endpoints(n, edge);
    const auto [ru, rv] = state.count_edge(edge.u, edge.v);
    if (ru == rv || !state.saturated(ru, rv)) continue;
    const auto cu = state.neighbor_count(ru);
    const auto cv = state.neighbor_count(rv);
    const bool u_wins = cu > cv || (cu == cv && ru < rv);
    const auto winner = u_wins ? ru : rv;
    const auto loser = u_wins ? rv : ru;
    state.merge(winner, loser);
    h.events.push_back({winner, loser, edge.dist});
  }
  return h;
}

/// Tie-safe complete linkage, streaming form. Feed every edge of a tie batch
/// with add_edge(), then call contractions() once with the batch distance.
///
/// contractions() repeatedly merges every connected component of the
/// saturation graph (on current clusters) that is a clique, until no
/// component merges. Only components touching a root whose counts changed
/// since the last call are examined; an untouched component had the same
/// shape at the previous batch end and did not merge then.
class ConservativeLinkage {
 public:
  explicit ConservativeLinkage(std::size_t n) : state_(n) {}

  std::size_t n() const { return state_.n(); }
  const ClusterState& state() const { return state_; }
  std::size_t find(std::size_t x) { return state_.find(x); }

  void add_edge(std::size_t u, std::size_t v) {
    detail::check_endpoints(n(), {u, v, 0.0});
    const auto [ru, rv] = state_.count_edge(u, v);
    if (ru != rv) {
      touched_.push_back(ru);
      touched_.push_back(rv);
    }
  }

  /// Merges of the batch ending at `dist`, in the order they were applied.
  std::vector<MergeEvent> contractions(Scale dist) {
    std::vector<MergeEvent> out;
    std::vector<std::size_t> frontier = std::move(touched_);
    touched_.clear();
    while (true) {
      std::vector<std::size_t> next;
      for (const auto& component : clique_components(frontier)) {
        std::size_t winner = component.front();
        for (auto r : component)
          if (state_.size(r) > state_.size(winner)) winner = r;  // ties: lowest index
        for (auto r : component) {
          if (r == winner) continue;
          state_.merge(winner, r);
          out.push_back({winner, r, dist});
        }
        next.push_back(winner);
      }
      if (next.empty()) break;
      frontier = std::move(next);
    }
    return out;
  }

 private:
  /// Connected components (of size >= 2) of the saturation graph that
  /// contain a root from `seeds` and are cliques. Members sorted ascending,
  /// components ordered by their smallest seed.
  std::vector<std::vector<std::size_t>> clique_components(std::vector<std::size_t> seeds) {
    for (auto& s : seeds) s = state_.find(s);
    std::sort(seeds.begin(), seeds.end());
    seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());

    std::vector<std::vector<std::size_t>> cliques;
    std::unordered_map<std::size_t, std::size_t> saturated_degree;
    auto visited = [&](std::size_t r) { return saturated_degree.contains(r); };
    for (auto seed : seeds) {
      if (visited(seed)) continue;
      std::vector<std::size_t> component{seed};
      saturated_degree[seed] = 0;
      for (std::size_t head = 0; head < component.size(); ++head) {
        const auto a = component[head];
        std::size_t degree = 0;
        for (const auto& [b, count] : state_.neighbors(a)) {
          if (count != state_.size(a) * state_.size(b)) continue;
          ++degree;
          if (!visited(b)) {
            saturated_degree[b] = 0;
            component.push_back(b);
          }
        }
        saturated_degree[a] = degree;
      }
      if (component.size() < 2) continue;
      const auto m = component.size();
      const bool clique = std::all_of(component.begin(), component.end(),
                                      [&](std::size_t r) { return saturated_degree[r] == m - 1; });
      if (!clique) continue;
      std::sort(component.begin(), component.end());
      cliques.push_back(std::move(component));
    }
    return cliques;
  }

  ClusterState state_;
  std::vector<std::size_t> touched_;
};

/// Batch driver for ConservativeLinkage: contractions are taken at the end of
/// every maximal run of equal distances (exact floating-point equality).
inline MergeHistory conservative_complete_linkage(std::size_t n, const SortedEdgeList& e) {
  MergeHistory h{n, {}};
  ConservativeLinkage linkage(n);
  const auto& edges = e.edges;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    linkage.add_edge(edges[i].u, edges[i].v);
    const bool batch_ends = i + 1 == edges.size() || edges[i + 1].dist != edges[i].dist;
    if (!batch_ends) continue;
    for (const auto& ev : linkage.contractions(edges[i].dist)) h.events.push_back(ev);
  }
  return h;
}

/// Blocks of the merge forest restricted to events with dist <= r.
inline Partition partition_at(const MergeHistory& h, Scale r) {
  UnionFind uf(h.n);
  for (const auto& ev : h.events) {
    if (ev.dist > r) break;
    uf.unite(ev.winner, ev.loser);
  }
  return Partition::from_union_find(uf);
}

/// Distinct event distances, ascending.
inline std::vector<Scale> event_scales(const MergeHistory& h) {
  std::vector<Scale> out;
  for (const auto& ev : h.events)
    if (out.empty() || out.back() != ev.dist) out.push_back(ev.dist);
  return out;
}

/// One "winner loser dist" line per event.
inline void write_history(std::ostream& out, const MergeHistory& h) {
  for (const auto& ev : h.events)
    out << ev.winner << ' ' << ev.loser << ' ' << text::format_real(ev.dist) << '\n';
}

inline MergeHistory read_history(std::istream& in, std::size_t n) {
  MergeHistory h{n, {}};
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (text::trim(line).empty()) continue;
    const auto tok = text::split_whitespace(line);
    const auto w = tok.size() == 3 ? text::parse_index(tok[0]) : std::nullopt;
    const auto l = tok.size() == 3 ? text::parse_index(tok[1]) : std::nullopt;
    const auto d = tok.size() == 3 ? text::parse_real(tok[2]) : std::nullopt;
    if (!w || !l || !d || *w >= n || *l >= n || *w == *l)
      throw ParseError("malformed merge event at row " + std::to_string(row));
    if (!h.events.empty() && *d < h.events.back().dist)
      throw ParseError("merge distances decrease at row " + std::to_string(row));
    h.events.push_back({*w, *l, *d});
  }
  return h;
}

}  // namespace qrips
