#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

#include "qrips/persistence.hpp"

namespace qrips {

namespace detail {

struct DiagramPoint {
  Scale birth;
  Scale death;
};

/// Costs defining a bottleneck problem. `pair` and `diagonal` may return
/// +inf for forbidden matches; `coordinate` compares two endpoints (used for
/// essential classes, where only births are compared).
struct BottleneckCosts {
  std::function<double(double, double)> coordinate;
  std::function<double(DiagramPoint)> diagonal;
  double zero;  // cost of a perfect match
};

/// Maximum bipartite matching by augmenting paths.
class BipartiteMatcher {
 public:
  explicit BipartiteMatcher(std::size_t left, std::size_t right)
      : adj_(left), match_right_(right, kFree) {}

  void add(std::size_t l, std::size_t r) { adj_[l].push_back(r); }

  std::size_t solve() {
    std::size_t matched = 0;
    for (std::size_t l = 0; l < adj_.size(); ++l) {
      visited_.assign(match_right_.size(), false);
      if (augment(l)) ++matched;
    }
    return matched;
  }

 private:
  static constexpr std::size_t kFree = static_cast<std::size_t>(-1);

  bool augment(std::size_t l) {
    for (auto r : adj_[l]) {
      if (visited_[r]) continue;
      visited_[r] = true;
      if (match_right_[r] == kFree || augment(match_right_[r])) {
        match_right_[r] = l;
        return true;
      }
    }
    return false;
  }

  std::vector<std::vector<std::size_t>> adj_;
  std::vector<std::size_t> match_right_;
  std::vector<bool> visited_;
};

/// Exact bottleneck value over matchings between a and b where any point
/// may instead go to the diagonal. Binary search over the finite candidate
/// costs, each tested for a perfect matching.
inline double finite_bottleneck(const std::vector<DiagramPoint>& a,
                                const std::vector<DiagramPoint>& b, const BottleneckCosts& costs) {
  const auto p = a.size();
  const auto q = b.size();
  auto pair_cost = [&](const DiagramPoint& x, const DiagramPoint& y) {
    return std::max(costs.coordinate(x.birth, y.birth), costs.coordinate(x.death, y.death));
  };
  std::vector<std::vector<double>> c(p, std::vector<double>(q));
  std::vector<double> diag_a(p), diag_b(q);
  std::vector<double> candidates{costs.zero};
  for (std::size_t i = 0; i < p; ++i) {
    diag_a[i] = costs.diagonal(a[i]);
    candidates.push_back(diag_a[i]);
    for (std::size_t j = 0; j < q; ++j) {
      c[i][j] = pair_cost(a[i], b[j]);
      candidates.push_back(c[i][j]);
    }
  }
  for (std::size_t j = 0; j < q; ++j) {
    diag_b[j] = costs.diagonal(b[j]);
    candidates.push_back(diag_b[j]);
  }
  std::erase_if(candidates, [](double x) { return std::isinf(x); });
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  // Left: a_0..a_{p-1}, then diagonal copies of b. Right: b_0..b_{q-1},
  // then diagonal copies of a.
  auto feasible = [&](double eps) {
    BipartiteMatcher m(p + q, p + q);
    for (std::size_t i = 0; i < p; ++i) {
      for (std::size_t j = 0; j < q; ++j)
        if (c[i][j] <= eps) m.add(i, j);
      if (diag_a[i] <= eps) m.add(i, q + i);
    }
    for (std::size_t j = 0; j < q; ++j) {
      if (diag_b[j] <= eps) m.add(p + j, j);
      for (std::size_t i = 0; i < p; ++i) m.add(p + j, q + i);
    }
    return m.solve() == p + q;
  };

  std::size_t lo = 0, hi = candidates.size();  // answer index in [lo, hi); hi = infeasible
  while (lo < hi) {
    const auto mid = (lo + hi) / 2;
    if (feasible(candidates[mid]))
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo == candidates.size() ? INFINITY : candidates[lo];
}

inline double diagram_bottleneck(const Barcode& a, const Barcode& b, std::size_t degree,
                                 const BottleneckCosts& costs) {
  std::vector<DiagramPoint> fa, fb;
  std::vector<double> ea, eb;
  for (const auto& i : a.in_degree(degree))
    i.essential() ? ea.push_back(i.birth) : fa.push_back({i.birth, i.death});
  for (const auto& i : b.in_degree(degree))
    i.essential() ? eb.push_back(i.birth) : fb.push_back({i.birth, i.death});
  if (ea.size() != eb.size()) return INFINITY;
  std::sort(ea.begin(), ea.end());
  std::sort(eb.begin(), eb.end());
  double result = costs.zero;
  for (std::size_t k = 0; k < ea.size(); ++k) result = std::max(result, costs.coordinate(ea[k], eb[k]));
  return std::max(result, finite_bottleneck(fa, fb, costs));
}

}  // namespace detail

/// Additive bottleneck distance between the degree-k parts of two barcodes.
/// Essential classes match only essential classes (by birth); a differing
/// number of them gives +inf.
inline double bottleneck(const Barcode& a, const Barcode& b, std::size_t degree) {
  const detail::BottleneckCosts costs{
      [](double x, double y) { return x == y ? 0.0 : std::abs(x - y); },
      [](detail::DiagramPoint p) { return (p.death - p.birth) / 2; },
      0.0};
  return detail::diagram_bottleneck(a, b, degree, costs);
}

/// Multiplicative bottleneck: exp of the bottleneck distance between the
/// log-rescaled barcodes, computed directly in ratio space. Two zero
/// endpoints match at ratio 1; zero against a positive value is +inf; a bar
/// goes to the diagonal at sqrt(death / birth).
inline double multiplicative_bottleneck(const Barcode& a, const Barcode& b, std::size_t degree) {
  for (const auto* bc : {&a, &b})
    for (const auto& i : bc->intervals)
      if (i.birth < 0 || i.death < 0)
        throw std::invalid_argument("multiplicative bottleneck needs nonnegative endpoints");
  const detail::BottleneckCosts costs{
      [](double x, double y) {
        if (x == y) return 1.0;
        if (x == 0 || y == 0) return static_cast<double>(INFINITY);
        return std::max(x / y, y / x);
      },
      [](detail::DiagramPoint p) {
        if (p.birth == p.death) return 1.0;
        if (p.birth == 0) return static_cast<double>(INFINITY);
        return std::sqrt(p.death / p.birth);
      },
      1.0};
  return detail::diagram_bottleneck(a, b, degree, costs);
}

}  // namespace qrips
