#pragma once

#include <algorithm>
#include <cstddef>
#include <ostream>
#include <set>
#include <vector>

namespace qrips {

/// Sorted vertex tuple.
using Simplex = std::vector<std::size_t>;

/// Finite abstract simplicial complex stored as an explicit, downward-closed
/// simplex set. Ordering of the set is lexicographic on sorted tuples, which
/// makes equality of complexes plain set equality.
struct SimplicialComplex {
  std::size_t vertex_count = 0;
  std::set<Simplex> simplices;

  /// Inserts `s` (sorted, nonempty) together with all its nonempty faces.
  void insert_closed(const Simplex& s) {
    if (simplices.contains(s)) return;
    const auto k = s.size();
    for (std::size_t mask = 1; mask < (std::size_t{1} << k); ++mask) {
      Simplex face;
      for (std::size_t b = 0; b < k; ++b)
        if (mask >> b & 1) face.push_back(s[b]);
      simplices.insert(std::move(face));
    }
  }

  /// Highest simplex dimension, or -1 for the empty complex.
  long dimension() const {
    long d = -1;
    for (const auto& s : simplices) d = std::max(d, static_cast<long>(s.size()) - 1);
    return d;
  }

  std::vector<std::size_t> counts_by_dimension() const {
    std::vector<std::size_t> out(static_cast<std::size_t>(dimension() + 1), 0);
    for (const auto& s : simplices) ++out[s.size() - 1];
    return out;
  }

  friend bool operator==(const SimplicialComplex&, const SimplicialComplex&) = default;
};

/// One simplex per line, space-separated sorted indices, lines in
/// lexicographic order.
inline void write_complex(std::ostream& out, const SimplicialComplex& k) {
  for (const auto& s : k.simplices) {
    for (std::size_t i = 0; i < s.size(); ++i) out << (i ? " " : "") << s[i];
    out << '\n';
  }
}

}  // namespace qrips
