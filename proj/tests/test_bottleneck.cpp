#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "qrips/bottleneck.hpp"

using namespace qrips;

namespace {

constexpr double kInf = kUnbounded;

Barcode bars(std::initializer_list<PersistenceInterval> list) {
  Barcode b{list};
  b.sort();
  return b;
}

/// Random finite degree-1 bars on a coarse lattice, so ties are common.
Barcode random_bars(std::size_t count, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> u(1, 12);
  Barcode b;
  for (std::size_t i = 0; i < count; ++i) {
    double x = u(rng) / 4.0, y = u(rng) / 4.0;
    if (x > y) std::swap(x, y);
    if (x == y) y += 0.25;
    b.intervals.push_back({1, x, y});
  }
  b.sort();
  return b;
}

std::vector<std::pair<double, double>> points(const Barcode& b) {
  std::vector<std::pair<double, double>> out;
  for (const auto& i : b.intervals) out.emplace_back(i.birth, i.death);
  return out;
}

/// Log-rescaled copy: the multiplicative distance is exp of the additive
/// distance between these.
std::vector<std::pair<double, double>> log_points(const Barcode& b) {
  std::vector<std::pair<double, double>> out;
  for (const auto& i : b.intervals) out.emplace_back(std::log(i.birth), std::log(i.death));
  return out;
}

}  // namespace

TEST(Bottleneck, Fixtures) {
  EXPECT_EQ(bottleneck(bars({{1, 1, 3}}), bars({{1, 1, 4}}), 1), 1.0);
  EXPECT_EQ(bottleneck(bars({{1, 1, 3}}), Barcode{}, 1), 1.0);
  EXPECT_EQ(bottleneck(Barcode{}, Barcode{}, 0), 0.0);
  EXPECT_EQ(bottleneck(bars({{0, 0, kInf}}), bars({{0, 0.5, kInf}}), 0), 0.5);
  // Other degrees are ignored.
  EXPECT_EQ(bottleneck(bars({{0, 0, 5}}), bars({{1, 0, 5}}), 2), 0.0);
}

TEST(Bottleneck, EssentialCountMismatchIsInfinite) {
  EXPECT_TRUE(std::isinf(bottleneck(bars({{0, 0, kInf}, {0, 0, kInf}}), bars({{0, 0, kInf}}), 0)));
  EXPECT_TRUE(std::isinf(multiplicative_bottleneck(bars({{0, 0, kInf}}), Barcode{}, 0)));
}

TEST(MultiplicativeBottleneck, Fixtures) {
  EXPECT_EQ(multiplicative_bottleneck(bars({{0, 0, 2}}), bars({{0, 0, 6}}), 0), 3.0);
  EXPECT_EQ(multiplicative_bottleneck(bars({{1, 1, 4}}), bars({{1, 2, 8}}), 1), 2.0);
  EXPECT_EQ(multiplicative_bottleneck(bars({{1, 1, 4}}), Barcode{}, 1), 2.0);
  EXPECT_EQ(multiplicative_bottleneck(Barcode{}, Barcode{}, 1), 1.0);
  EXPECT_THROW(multiplicative_bottleneck(bars({{1, -1, 4}}), Barcode{}, 1), std::invalid_argument);
}

TEST(Bottleneck, IdenticalBarcodes) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 20; ++t) {
    const auto b = random_bars(5, rng);
    EXPECT_EQ(bottleneck(b, b, 1), 0.0);
    EXPECT_EQ(multiplicative_bottleneck(b, b, 1), 1.0);
  }
}

TEST(Bottleneck, MatchesExhaustiveSearch) {
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<std::size_t> size(0, 5);
  for (int t = 0; t < 300; ++t) {
    const auto a = random_bars(size(rng), rng);
    const auto b = random_bars(size(rng), rng);
    ASSERT_DOUBLE_EQ(bottleneck(a, b, 1), fixtures::brute_bottleneck(points(a), points(b))) << "trial " << t;
    ASSERT_NEAR(std::log(multiplicative_bottleneck(a, b, 1)),
                fixtures::brute_bottleneck(log_points(a), log_points(b)), 1e-12)
        << "trial " << t;
  }
}

TEST(Bottleneck, SymmetricAndTriangle) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 100; ++t) {
    const auto a = random_bars(4, rng), b = random_bars(3, rng), c = random_bars(4, rng);
    EXPECT_EQ(bottleneck(a, b, 1), bottleneck(b, a, 1));
    EXPECT_EQ(multiplicative_bottleneck(a, b, 1), multiplicative_bottleneck(b, a, 1));
    EXPECT_LE(bottleneck(a, c, 1), bottleneck(a, b, 1) + bottleneck(b, c, 1) + 1e-12);
    EXPECT_LE(multiplicative_bottleneck(a, c, 1),
              multiplicative_bottleneck(a, b, 1) * multiplicative_bottleneck(b, c, 1) * (1 + 1e-12));
  }
}
