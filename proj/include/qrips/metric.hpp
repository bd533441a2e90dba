#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qrips/partition.hpp"
#include "qrips/text.hpp"

namespace qrips {

/// Filtration parameter. Always finite and nonnegative where it is used as a
/// scale; +inf is reserved for essential bars.
using Scale = double;

inline constexpr Scale kUnbounded = std::numeric_limits<Scale>::infinity();

/// Points embedded in R^dim, stored row-major.
class PointCloud {
 public:
  PointCloud() = default;
  PointCloud(std::size_t dim, std::vector<double> coords)
      : dim_(dim), coords_(std::move(coords)) {
    if (dim_ == 0) throw std::invalid_argument("point cloud dimension must be positive");
    if (coords_.empty() || coords_.size() % dim_ != 0)
      throw std::invalid_argument("point cloud coordinate count is not a positive multiple of dim");
    for (double c : coords_)
      if (!std::isfinite(c)) throw std::invalid_argument("point cloud has a non-finite coordinate");
  }

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return dim_ == 0 ? 0 : coords_.size() / dim_; }
  std::span<const double> point(std::size_t i) const {
    return {coords_.data() + i * dim_, dim_};
  }
  const std::vector<double>& coords() const { return coords_; }

 private:
  std::size_t dim_ = 0;
  std::vector<double> coords_;
};

/// Dense n x n distance matrix. Construction does not validate; see
/// validate_distance_matrix().
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(std::size_t n) : n_(n), d_(n * n, 0.0) {}
  DistanceMatrix(std::size_t n, std::vector<double> entries) : n_(n), d_(std::move(entries)) {
    if (d_.size() != n_ * n_) throw std::invalid_argument("distance matrix is not square");
  }
  /// Builds a matrix from nested rows (convenient for fixtures).
  static DistanceMatrix from_rows(const std::vector<std::vector<double>>& rows) {
    DistanceMatrix dm(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != rows.size()) throw std::invalid_argument("distance matrix is not square");
      for (std::size_t j = 0; j < rows.size(); ++j) dm(i, j) = rows[i][j];
    }
    return dm;
  }

  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return d_[i * n_ + j]; }
  /// Writes d(i,j) and d(j,i).
  void set(std::size_t i, std::size_t j, double value) {
    (*this)(i, j) = value;
    (*this)(j, i) = value;
  }
  std::span<const double> row(std::size_t i) const { return {d_.data() + i * n_, n_}; }

  double max_entry() const {
    return d_.empty() ? 0.0 : *std::max_element(d_.begin(), d_.end());
  }

  friend bool operator==(const DistanceMatrix&, const DistanceMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> d_;
};

struct Edge {
  std::size_t u = 0;
  std::size_t v = 0;
  Scale dist = 0.0;
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Edges with dist <= threshold, ascending by (dist, u, v).
struct SortedEdgeList {
  std::vector<Edge> edges;
  Scale threshold = kUnbounded;
};

// ---------------------------------------------------------------------------
// Loading

/// Reads one point per line, comma-separated reals. Blank lines are skipped;
/// anything non-numeric (including a header row) is rejected.
inline PointCloud load_point_cloud(std::istream& in) {
  std::vector<double> coords;
  std::size_t dim = 0;
  std::size_t row = 0;
  std::string line;
  while (std::getline(in, line)) {
    ++row;
    if (text::trim(line).empty()) continue;
    const auto tokens = text::split(line, ',');
    if (dim == 0) {
      dim = tokens.size();
    } else if (tokens.size() != dim) {
      throw ParseError("ragged row " + std::to_string(row) + ": expected " +
                       std::to_string(dim) + " values, found " + std::to_string(tokens.size()));
    }
    for (std::size_t c = 0; c < tokens.size(); ++c) {
      const auto value = text::parse_real(tokens[c]);
      if (!value)
        throw ParseError("non-numeric token '" + std::string(text::trim(tokens[c])) +
                         "' at row " + std::to_string(row) + ", column " + std::to_string(c + 1));
      coords.push_back(*value);
    }
  }
  if (dim == 0) throw ParseError("point cloud is empty");
  return PointCloud(dim, std::move(coords));
}

/// Lower-triangular distance text. Line k (0-based row k) holds
/// d[k][0..k-1], comma-separated. Row 0 has no entries, so a file either
/// starts with an empty line (row 0 spelled out) or directly with row 1.
/// A file with no content is the one-point space.
inline DistanceMatrix read_lower_distance(std::istream& in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  while (!lines.empty() && text::trim(lines.back()).empty()) lines.pop_back();

  std::size_t first_row = 1;
  std::size_t skip = 0;
  if (!lines.empty() && text::trim(lines.front()).empty()) skip = 1;  // explicit row 0
  const std::size_t n = lines.size() - skip + 1;
  DistanceMatrix dm(n);
  for (std::size_t k = first_row; k < n; ++k) {
    const auto& raw = lines[k - first_row + skip];
    const auto tokens = text::split(raw, ',');
    if (tokens.size() != k)
      throw ParseError("row " + std::to_string(k) + " of lower-triangular matrix has " +
                       std::to_string(tokens.size()) + " entries, expected " + std::to_string(k));
    for (std::size_t j = 0; j < k; ++j) {
      const auto value = text::parse_real(tokens[j]);
      if (!value)
        throw ParseError("non-numeric token '" + std::string(text::trim(tokens[j])) +
                         "' at row " + std::to_string(k) + ", column " + std::to_string(j + 1));
      dm.set(k, j, *value);
    }
  }
  return dm;
}

/// Writes rows 1..n-1 (no leading empty row), the layout common flag-complex
/// persistence tools read as "lower-distance".
inline void write_lower_distance(std::ostream& out, const DistanceMatrix& dm) {
  for (std::size_t k = 1; k < dm.size(); ++k) {
    for (std::size_t j = 0; j < k; ++j) {
      if (j) out << ',';
      out << text::format_real(dm(k, j));
    }
    out << '\n';
  }
}

// ---------------------------------------------------------------------------
// Metric construction and checks

/// Euclidean distances. Each entry accumulates squared differences in
/// coordinate order, so the result is independent of evaluation order.
inline DistanceMatrix pairwise_distances(const PointCloud& pc) {
  const auto n = pc.size();
  DistanceMatrix dm(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto p = pc.point(i);
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto q = pc.point(j);
      double acc = 0.0;
      for (std::size_t c = 0; c < pc.dim(); ++c) {
        const double diff = p[c] - q[c];
        acc += diff * diff;
      }
      dm.set(i, j, std::sqrt(acc));
    }
  }
  return dm;
}

struct MatrixViolation {
  enum class Kind { Asymmetric, NonzeroDiagonal, Negative, NonFinite };
  Kind kind;
  std::size_t i;
  std::size_t j;
};

/// d(i, j) > d(i, via) + d(via, j).
struct TriangleWarning {
  std::size_t i;
  std::size_t via;
  std::size_t j;
};

struct ValidationReport {
  std::vector<MatrixViolation> violations;
  std::vector<TriangleWarning> triangle_warnings;
  bool ok() const { return violations.empty(); }
  bool empty() const { return violations.empty() && triangle_warnings.empty(); }
};

inline std::string describe(const MatrixViolation& v) {
  const auto at = "(" + std::to_string(v.i) + "," + std::to_string(v.j) + ")";
  switch (v.kind) {
    case MatrixViolation::Kind::Asymmetric: return "symmetry violation at " + at;
    case MatrixViolation::Kind::NonzeroDiagonal: return "nonzero diagonal at " + at;
    case MatrixViolation::Kind::Negative: return "negative entry at " + at;
    case MatrixViolation::Kind::NonFinite: return "non-finite entry at " + at;
  }
  return "violation at " + at;
}

struct ValidateOptions {
  bool strict = false;          // throw on any hard violation
  bool check_triangle = true;   // O(n^3) scan
  double triangle_rel_tol = 1e-12;
};

class InvalidMetric : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline ValidationReport validate_distance_matrix(const DistanceMatrix& dm,
                                                 ValidateOptions opts = {}) {
  ValidationReport rep;
  const auto n = dm.size();
  using Kind = MatrixViolation::Kind;
  for (std::size_t i = 0; i < n; ++i) {
    if (dm(i, i) != 0.0) rep.violations.push_back({Kind::NonzeroDiagonal, i, i});
    for (std::size_t j = 0; j < n; ++j) {
      const double x = dm(i, j);
      if (!std::isfinite(x)) {
        if (i <= j) rep.violations.push_back({Kind::NonFinite, i, j});
        continue;
      }
      if (x < 0.0) rep.violations.push_back({Kind::Negative, i, j});
      if (i < j && x != dm(j, i)) rep.violations.push_back({Kind::Asymmetric, i, j});
    }
  }
  if (opts.check_triangle && rep.ok()) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          if (k == i || k == j) continue;
          const double bound = dm(i, k) + dm(k, j);
          if (dm(i, j) > bound * (1.0 + opts.triangle_rel_tol))
            rep.triangle_warnings.push_back({i, k, j});
        }
  }
  if (opts.strict && !rep.ok()) throw InvalidMetric(describe(rep.violations.front()));
  return rep;
}

/// All pairs with dist <= threshold, ascending by dist then (u, v).
inline SortedEdgeList sorted_edges(const DistanceMatrix& dm, Scale threshold = kUnbounded) {
  SortedEdgeList out;
  out.threshold = threshold;
  const auto n = dm.size();
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (dm(u, v) <= threshold) out.edges.push_back({u, v, dm(u, v)});
  std::sort(out.edges.begin(), out.edges.end(), [](const Edge& a, const Edge& b) {
    if (a.dist != b.dist) return a.dist < b.dist;
    if (a.u != b.u) return a.u < b.u;
    return a.v < b.v;
  });
  return out;
}

/// min over x of max over y of d(x, y).
inline Scale enclosing_radius(const DistanceMatrix& dm) {
  if (dm.size() == 0) throw std::invalid_argument("enclosing radius of an empty space");
  Scale best = kUnbounded;
  for (std::size_t i = 0; i < dm.size(); ++i) {
    const auto r = dm.row(i);
    best = std::min(best, *std::max_element(r.begin(), r.end()));
  }
  return best;
}

/// Metric on the blocks of `p`: the minimum distance between members of two
/// blocks. Block order follows p.blocks.
inline DistanceMatrix quotient_metric(const DistanceMatrix& dm, const Partition& p) {
  p.validate(dm.size());
  const auto m = p.blocks.size();
  DistanceMatrix q(m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b) {
      Scale best = kUnbounded;
      for (auto x : p.blocks[a])
        for (auto y : p.blocks[b]) best = std::min(best, dm(x, y));
      q.set(a, b, best);
    }
  return q;
}

/// Largest pairwise distance inside `block`; 0 for singletons.
inline Scale block_diameter(std::span<const std::size_t> block, const DistanceMatrix& dm) {
  if (block.empty()) throw std::invalid_argument("diameter of an empty block");
  Scale diam = 0.0;
  for (std::size_t a = 0; a < block.size(); ++a)
    for (std::size_t b = a + 1; b < block.size(); ++b)
      diam = std::max(diam, dm(block[a], block[b]));
  return diam;
}

}  // namespace qrips
