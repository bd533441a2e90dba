#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "qrips/metric.hpp"

// Synthetic samples for tests and benchmarks. All generators are seeded and
// deterministic for a given standard library.

namespace qrips::synthetic {

/// n points at uniform angles on the unit circle, optionally jittered by
/// Gaussian noise of the given standard deviation.
inline PointCloud circle(std::size_t n, std::uint64_t seed, double noise = 0.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);
  std::normal_distribution<double> jitter(0.0, noise > 0 ? noise : 1.0);
  std::vector<double> coords;
  coords.reserve(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = angle(rng);
    double x = std::cos(t), y = std::sin(t);
    if (noise > 0) {
      x += jitter(rng);
      y += jitter(rng);
    }
    coords.push_back(x);
    coords.push_back(y);
  }
  return PointCloud(2, std::move(coords));
}

/// Torus in R^3 with tube centre radius `c` and tube radius `a`, both angles
/// uniform (not area-uniform).
inline PointCloud torus(std::size_t n, std::uint64_t seed, double c = 2.0, double a = 1.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);
  std::vector<double> coords;
  coords.reserve(3 * n);
  for (std::size_t i = 0; i < n; ++i) {
    const double theta = angle(rng);
    const double phi = angle(rng);
    coords.push_back((c + a * std::cos(theta)) * std::cos(phi));
    coords.push_back((c + a * std::cos(theta)) * std::sin(phi));
    coords.push_back(a * std::sin(theta));
  }
  return PointCloud(3, std::move(coords));
}

/// Uniform sample of the unit sphere S^k in R^{k+1}.
inline PointCloud sphere(std::size_t n, std::size_t k, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> coords;
  coords.reserve((k + 1) * n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> v(k + 1);
    double norm = 0.0;
    do {
      norm = 0.0;
      for (auto& x : v) {
        x = gauss(rng);
        norm += x * x;
      }
    } while (norm == 0.0);
    norm = std::sqrt(norm);
    for (auto x : v) coords.push_back(x / norm);
  }
  return PointCloud(k + 1, std::move(coords));
}

/// Uniform sample of the unit cube [0,1]^dim.
inline PointCloud uniform_cube(std::size_t n, std::size_t dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> coords(n * dim);
  for (auto& x : coords) x = u(rng);
  return PointCloud(dim, std::move(coords));
}

/// n points drawn without structure from the integer grid {0..side-1}^dim;
/// produces many tied distances. Points may repeat.
inline PointCloud integer_grid_sample(std::size_t n, std::size_t dim, std::size_t side,
                                      std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> u(0, side - 1);
  std::vector<double> coords(n * dim);
  for (auto& x : coords) x = static_cast<double>(u(rng));
  return PointCloud(dim, std::move(coords));
}

/// Generator by name: "circle", "torus", "sphere<k>" (e.g. "sphere2"), or
/// "cube<d>".
inline PointCloud by_name(const std::string& name, std::size_t n, std::uint64_t seed) {
  if (name == "circle") return circle(n, seed);
  if (name == "torus") return torus(n, seed);
  auto suffix_dim = [&](std::size_t prefix) -> std::size_t {
    if (name.size() == prefix) return 2;
    return static_cast<std::size_t>(std::stoul(name.substr(prefix)));
  };
  if (name.rfind("sphere", 0) == 0) return sphere(n, suffix_dim(6), seed);
  if (name.rfind("cube", 0) == 0) return uniform_cube(n, suffix_dim(4), seed);
  throw std::invalid_argument("unknown generator '" + name + "'");
}

}  // namespace qrips::synthetic
