#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "qrips/persistence.hpp"
#include "qrips/tower.hpp"

using namespace qrips;

namespace {

constexpr double kInf = kUnbounded;

Barcode bars(std::initializer_list<PersistenceInterval> list) {
  Barcode b{list};
  b.sort();
  return b;
}

SimplicialComplex closed(std::size_t n, std::initializer_list<Simplex> maximal) {
  SimplicialComplex k{n, {}};
  for (const auto& s : maximal) k.insert_closed(s);
  return k;
}

/// Simplices of the filtration born at or before r.
SimplicialComplex sublevel(const FilteredComplex& fc, std::size_t n, double r) {
  SimplicialComplex k{n, {}};
  for (const auto& s : fc.simplices)
    if (s.birth <= r) k.simplices.insert(s.vertices);
  return k;
}

}  // namespace

TEST(RipsFiltration, SquareCounts) {
  const auto fc = rips_filtration(fixtures::square4_dm(), std::sqrt(2.0), 2);
  EXPECT_EQ(fc.counts_by_dimension(), (std::vector<std::size_t>{4, 6, 4}));
  EXPECT_EQ(count_rips_simplices(fixtures::square4_dm(), std::sqrt(2.0), 2),
            (std::vector<std::size_t>{4, 6, 4}));
  EXPECT_EQ(count_rips_simplices(fixtures::square4_dm(), 1.0, 2), (std::vector<std::size_t>{4, 4, 0}));
}

TEST(RipsFiltration, OrderAndBirths) {
  const auto fc = rips_filtration(fixtures::line3(), 2.0, 2);
  ASSERT_EQ(fc.simplices.size(), 7u);
  EXPECT_EQ(fc.simplices.back(), (FilteredSimplex{{0, 1, 2}, 2.0}));
  for (std::size_t i = 1; i < fc.simplices.size(); ++i) {
    const auto& a = fc.simplices[i - 1];
    const auto& b = fc.simplices[i];
    EXPECT_TRUE(a.birth < b.birth || (a.birth == b.birth && a.vertices.size() <= b.vertices.size()));
  }
}

TEST(RipsFiltration, PointCap) {
  EXPECT_THROW(rips_filtration(DistanceMatrix(5), 1.0, 1, RipsLimits{4}), std::length_error);
}

TEST(FlagFiltration, BirthIsLatestEdge) {
  FilteredGraph g{3, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 2.0}}};
  const auto fc = flag_filtration(g, 2);
  EXPECT_EQ(fc.simplices.back(), (FilteredSimplex{{0, 1, 2}, 2.0}));
  EXPECT_EQ(count_flag_simplices(g, 1), (std::vector<std::size_t>{3, 3}));
}

TEST(Persistence, SquareBarcode) {
  const auto bc = rips_persistence(fixtures::square4_dm(), std::sqrt(2.0), 1);
  EXPECT_EQ(bc, bars({{0, 0, 1}, {0, 0, 1}, {0, 0, 1}, {0, 0, kInf}, {1, 1, std::sqrt(2.0)}}));
}

TEST(Persistence, LineQuotientBarcode) {
  const auto g = build_filtered_skeleton(3, sorted_edges(fixtures::line3()));
  EXPECT_EQ(flag_persistence(g, 1), bars({{0, 0, 1}, {0, 0, 1}, {0, 0, kInf}}));
  const auto with_zero = flag_persistence(g, 1, PersistenceOptions{true});
  EXPECT_EQ(with_zero.in_degree(1), (std::vector<PersistenceInterval>{{1, 2, 2}}));
}

TEST(Persistence, SinglePointAndEmpty) {
  EXPECT_EQ(rips_persistence(DistanceMatrix(1), 0.0, 1), bars({{0, 0, kInf}}));
  EXPECT_TRUE(compute_persistence(FilteredComplex{}).intervals.empty());
}

TEST(Persistence, MissingOrLateFaceIsRejected) {
  FilteredComplex missing{{{{0}, 0}, {{0, 1}, 1}}};
  EXPECT_THROW(compute_persistence(missing), FiltrationError);
  FilteredComplex late{{{{0}, 0}, {{0, 1}, 1}, {{1}, 2}}};
  EXPECT_THROW(compute_persistence(late), FiltrationError);
}

TEST(Betti, Fixtures) {
  EXPECT_EQ(betti(closed(3, {{0, 1}, {1, 2}, {0, 2}})), (BettiVector{1, 1}));
  EXPECT_EQ(betti(closed(5, {{0, 1, 2, 3, 4}})), (BettiVector{1, 0, 0, 0, 0}));
  EXPECT_EQ(betti(closed(2, {{0}, {1}})), (BettiVector{2}));
  EXPECT_EQ(betti(SimplicialComplex{}), BettiVector{});
  // Boundary of a tetrahedron: a 2-sphere.
  EXPECT_EQ(betti(closed(4, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}})), (BettiVector{1, 0, 1}));
}

TEST(Betti, SameBettiIgnoresTrailingZeros) {
  EXPECT_TRUE(same_betti({1, 0, 0}, {1}));
  EXPECT_FALSE(same_betti({1, 1}, {1}));
}

TEST(Persistence, StaticFiltrationReproducesBetti) {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 30; ++t) {
    const auto dm = fixtures::random_euclidean(10, 2, rng);
    const auto scales = fixtures::critical_scales(dm);
    const double r = scales[scales.size() / 4];
    SimplicialComplex k{10, {}};
    for (const auto& s : rips_filtration(dm, r, 3).simplices) k.simplices.insert(s.vertices);
    const auto b = betti(k);
    const auto bc = compute_persistence(static_filtration(k));
    for (std::size_t d = 0; d < b.size(); ++d) EXPECT_EQ(bc.in_degree(d).size(), b[d]) << "degree " << d;
  }
}

TEST(Betti, EulerCharacteristic) {
  std::mt19937_64 rng(22);
  for (int t = 0; t < 30; ++t) {
    const auto dm = fixtures::random_euclidean(9, 3, rng);
    const auto scales = fixtures::critical_scales(dm);
    SimplicialComplex k{9, {}};
    for (const auto& s : rips_filtration(dm, scales[scales.size() / 3], 8).simplices)
      k.simplices.insert(s.vertices);
    long chi = 0, alt = 0;
    const auto counts = k.counts_by_dimension();
    const auto b = betti(k);
    for (std::size_t d = 0; d < counts.size(); ++d) chi += (d % 2 ? -1 : 1) * static_cast<long>(counts[d]);
    for (std::size_t d = 0; d < b.size(); ++d) alt += (d % 2 ? -1 : 1) * static_cast<long>(b[d]);
    EXPECT_EQ(chi, alt);
  }
}

TEST(Persistence, LiveBarsMatchBettiOfSublevelSets) {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 25; ++t) {
    const auto n = std::uniform_int_distribution<std::size_t>(3, 12)(rng);
    const auto dm = t % 2 ? fixtures::random_grid(n, 2, 4, rng) : fixtures::random_euclidean(n, 2, rng);
    const double thr = dm.max_entry();
    const std::size_t max_degree = 2;
    const auto fc = rips_filtration(dm, thr, max_degree + 1);
    const auto bc = compute_persistence(fc).truncated(max_degree);
    for (double r : fixtures::critical_scales(dm)) {
      const auto b = betti(sublevel(fc, n, r));
      for (std::size_t d = 0; d <= max_degree; ++d) {
        std::size_t live = 0;
        for (const auto& i : bc.in_degree(d)) live += i.birth <= r && r < i.death;
        ASSERT_EQ(live, d < b.size() ? b[d] : 0) << "trial " << t << " r=" << r << " degree " << d;
      }
    }
  }
}

TEST(Persistence, InvariantUnderRelabeling) {
  std::mt19937_64 rng(24);
  for (int t = 0; t < 20; ++t) {
    const auto dm = fixtures::random_euclidean(12, 3, rng);
    std::vector<std::size_t> perm(dm.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    const double thr = enclosing_radius(dm);
    EXPECT_EQ(rips_persistence(dm, thr, 2), rips_persistence(fixtures::permuted(dm, perm), thr, 2));
  }
}

TEST(Persistence, SkeletonWithoutContractionsGivesRipsBarcode) {
  for (std::size_t w = 2; w <= 4; ++w) {
    std::vector<double> c;
    for (std::size_t x = 0; x < w; ++x)
      for (std::size_t y = 0; y < 3; ++y) c.insert(c.end(), {double(x), double(y)});
    const auto dm = pairwise_distances(PointCloud(2, c));
    const auto first = conservative_complete_linkage(dm.size(), sorted_edges(dm)).events.front().dist;
    for (double thr : fixtures::critical_scales(dm)) {
      if (thr >= first) break;
      const auto g = build_filtered_skeleton(dm.size(), sorted_edges(dm, thr));
      EXPECT_EQ(flag_persistence(g, 2), rips_persistence(dm, thr, 2));
    }
  }
}

TEST(BarcodeText, RoundTrip) {
  const auto bc = rips_persistence(fixtures::square4_dm(), std::sqrt(2.0), 1);
  std::ostringstream out;
  write_barcode(out, bc);
  EXPECT_NE(out.str().find("0 0 inf\n"), std::string::npos);
  std::istringstream in(out.str());
  EXPECT_EQ(read_barcode(in), bc);
  std::istringstream bad("0 2 1\n");
  EXPECT_THROW(read_barcode(bad), ParseError);
}
