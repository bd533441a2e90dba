#pragma once

#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qrips/bottleneck.hpp"
#include "qrips/metric.hpp"
#include "qrips/persistence.hpp"
#include "qrips/synthetic.hpp"
#include "qrips/text.hpp"
#include "qrips/tower.hpp"

// Command implementations behind the `qrips` executable. Each command writes
// its primary output to `out` (or to the file named in the config) and
// diagnostics to `err`; failures are reported as CliError carrying the exit
// code.

namespace qrips::cli {

class CliError : public std::runtime_error {
 public:
  CliError(int code, const std::string& what) : std::runtime_error(what), code_(code) {}
  int code() const { return code_; }

 private:
  int code_;
};

enum class InputFormat { Points, LowerDistance };

struct RunConfig {
  std::vector<std::string> inputs;      // file paths
  std::vector<std::string> generators;  // "<name>:<count>", e.g. "torus:400"
  InputFormat format = InputFormat::Points;
  std::optional<Scale> threshold;       // unset: enclosing radius
  std::size_t max_dim = 1;
  bool vr = false;
  bool keep_zero_length = false;
  std::uint64_t seed = 0;
  std::optional<std::string> out_path;
  std::optional<std::string> sparse_out;
  std::optional<std::string> barcode_out;
  std::size_t max_points = 20000;  // dense matrix cap
  std::size_t compare_cap = 60;    // exact Rips oracle cap for compare
  std::size_t rips_cap = 1000;     // Rips persistence cap
};

struct Dataset {
  std::string label;
  DistanceMatrix dm;
};

struct StatsReport {
  struct Counts {
    std::vector<std::size_t> by_dim;  // dims 0..2
    std::size_t total() const {
      std::size_t t = 0;
      for (auto c : by_dim) t += c;
      return t;
    }
  };
  std::string label;
  std::size_t points = 0;
  Scale threshold = 0.0;
  Counts quotient;
  std::optional<Counts> rips;
  double build_ms = 0.0;
};

/// (ln S2 - ln S1) / (ln N2 - ln N1).
inline double growth_exponent(double n1, double s1, double n2, double s2) {
  if (n1 == n2)
    throw CliError(2, "growth exponent undefined: both inputs have the same number of points");
  return (std::log(s2) - std::log(s1)) / (std::log(n2) - std::log(n1));
}

namespace detail {

inline DistanceMatrix checked(DistanceMatrix dm, const RunConfig& cfg, std::ostream& err) {
  if (dm.size() > cfg.max_points)
    throw CliError(2, "input has " + std::to_string(dm.size()) + " points, above the cap of " +
                          std::to_string(cfg.max_points) + " (raise --max-points)");
  ValidateOptions opts;
  opts.check_triangle = dm.size() <= 300;
  const auto report = validate_distance_matrix(dm, opts);
  if (!report.ok()) throw CliError(2, "invalid distance matrix: " + describe(report.violations.front()));
  if (!report.triangle_warnings.empty())
    err << "warning: " << report.triangle_warnings.size() << " triangle inequality violations\n";
  return dm;
}

inline std::vector<Dataset> load_all(const RunConfig& cfg, std::ostream& err) {
  std::vector<Dataset> out;
  for (const auto& path : cfg.inputs) {
    std::ifstream in(path);
    if (!in) throw CliError(2, "cannot open '" + path + "'");
    try {
      DistanceMatrix dm = cfg.format == InputFormat::Points ? pairwise_distances(load_point_cloud(in))
                                                            : read_lower_distance(in);
      out.push_back({path, checked(std::move(dm), cfg, err)});
    } catch (const ParseError& e) {
      throw CliError(2, path + ": " + e.what());
    }
  }
  for (const auto& spec : cfg.generators) {
    const auto colon = spec.find(':');
    const auto count = colon == std::string::npos ? std::nullopt
                                                  : text::parse_index(std::string_view(spec).substr(colon + 1));
    if (!count || *count == 0) throw CliError(2, "generator spec must be <name>:<count>, got '" + spec + "'");
    try {
      auto pc = synthetic::by_name(spec.substr(0, colon), *count, cfg.seed);
      out.push_back({spec, checked(pairwise_distances(pc), cfg, err)});
    } catch (const std::invalid_argument& e) {
      throw CliError(2, e.what());
    }
  }
  if (out.empty()) throw CliError(2, "no input given (use --input or --generate)");
  return out;
}

inline Scale threshold_for(const RunConfig& cfg, const DistanceMatrix& dm) {
  if (cfg.threshold) {
    if (!(*cfg.threshold > 0) || !std::isfinite(*cfg.threshold))
      throw CliError(2, "threshold must be a positive finite number");
    return *cfg.threshold;
  }
  return enclosing_radius(dm);
}

/// Writes through `write` to `path` if given, else to `fallback`.
template <typename Write>
void emit(const std::optional<std::string>& path, std::ostream& fallback, Write&& write) {
  if (!path) {
    write(fallback);
    return;
  }
  std::ofstream file(*path);
  if (!file) throw CliError(2, "cannot open '" + *path + "' for writing");
  write(file);
}

inline QuotientTower tower_of(const DistanceMatrix& dm, Scale threshold) {
  return build_quotient_tower(dm.size(), sorted_edges(dm, threshold));
}

inline Barcode quotient_barcode(const DistanceMatrix& dm, Scale threshold, const RunConfig& cfg) {
  return flag_persistence(tower_of(dm, threshold).graph, cfg.max_dim, {cfg.keep_zero_length});
}

inline Barcode rips_barcode(const DistanceMatrix& dm, Scale threshold, const RunConfig& cfg,
                            std::size_t cap) {
  try {
    return rips_persistence(dm, threshold, cfg.max_dim, {cfg.keep_zero_length}, {cap});
  } catch (const std::length_error& e) {
    throw CliError(2, std::string(e.what()) + "; subsample the input");
  }
}

inline std::string join_counts(const std::vector<std::size_t>& c) {
  std::string out;
  for (std::size_t k = 0; k < c.size(); ++k) out += " dim" + std::to_string(k) + " " + std::to_string(c[k]);
  return out;
}

}  // namespace detail

/// Quotient tower 1-skeleton of the first input.
inline int cmd_build(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto data = detail::load_all(cfg, err).front();
  const auto threshold = detail::threshold_for(cfg, data.dm);
  const auto tower = detail::tower_of(data.dm, threshold);
  detail::emit(cfg.out_path, out, [&](std::ostream& os) { write_filtered_graph(os, tower.graph); });
  if (cfg.sparse_out)
    detail::emit(cfg.sparse_out, out, [&](std::ostream& os) { write_sparse(os, tower.graph); });
  return 0;
}

/// Barcode (degrees 0..max_dim) of the quotient flag filtration, or of the
/// exact Rips filtration with --vr.
inline int cmd_persistence(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto data = detail::load_all(cfg, err).front();
  const auto threshold = detail::threshold_for(cfg, data.dm);
  const auto bc = cfg.vr ? detail::rips_barcode(data.dm, threshold, cfg, cfg.rips_cap)
                         : detail::quotient_barcode(data.dm, threshold, cfg);
  detail::emit(cfg.barcode_out, out, [&](std::ostream& os) { write_barcode(os, bc); });
  return 0;
}

/// Per-degree multiplicative bottleneck between the quotient and exact Rips
/// barcodes. Returns 1 if any ratio exceeds 3.
inline int cmd_compare(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto data = detail::load_all(cfg, err).front();
  if (data.dm.size() > cfg.compare_cap)
    throw CliError(2, "compare needs the exact Rips barcode; " + std::to_string(data.dm.size()) +
                          " points exceed the cap of " + std::to_string(cfg.compare_cap) +
                          " (subsample the input or raise --compare-cap)");
  const auto threshold = detail::threshold_for(cfg, data.dm);
  const auto quotient = detail::quotient_barcode(data.dm, threshold, cfg);
  const auto rips = detail::rips_barcode(data.dm, threshold, cfg, cfg.compare_cap);
  bool exceeded = false;
  detail::emit(cfg.out_path, out, [&](std::ostream& os) {
    for (std::size_t k = 0; k <= cfg.max_dim; ++k) {
      const double ratio = multiplicative_bottleneck(quotient, rips, k);
      const bool bad = !(ratio <= 3.0 + 1e-9);
      exceeded = exceeded || bad;
      os << "degree " << k << " ratio " << text::format_real(ratio) << (bad ? " EXCEEDS_3" : " ok")
         << '\n';
    }
  });
  return exceeded ? 1 : 0;
}

inline StatsReport stats_for(const Dataset& data, const RunConfig& cfg) {
  StatsReport rep;
  rep.label = data.label;
  rep.points = data.dm.size();
  rep.threshold = detail::threshold_for(cfg, data.dm);
  const auto t0 = std::chrono::steady_clock::now();
  const auto tower = detail::tower_of(data.dm, rep.threshold);
  rep.build_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  rep.quotient.by_dim = count_flag_simplices(tower.graph, 2);
  if (cfg.vr) rep.rips = StatsReport::Counts{count_rips_simplices(data.dm, rep.threshold, 2)};
  return rep;
}

/// Simplex counts up to dimension 2; with two inputs also the growth
/// exponents. Timings go to `err` so that `out` stays deterministic.
inline int cmd_stats(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto data = detail::load_all(cfg, err);
  std::vector<StatsReport> reports;
  for (std::size_t i = 0; i < std::min<std::size_t>(2, data.size()); ++i)
    reports.push_back(stats_for(data[i], cfg));
  std::optional<double> alpha_q, alpha_vr;
  if (reports.size() == 2) {
    const auto& a = reports[0];
    const auto& b = reports[1];
    alpha_q = growth_exponent(a.points, a.quotient.total(), b.points, b.quotient.total());
    if (a.rips && b.rips) alpha_vr = growth_exponent(a.points, a.rips->total(), b.points, b.rips->total());
  }
  detail::emit(cfg.out_path, out, [&](std::ostream& os) {
    for (const auto& r : reports) {
      os << "input " << r.label << " points " << r.points << " threshold "
         << text::format_real(r.threshold) << '\n';
      os << "quotient" << detail::join_counts(r.quotient.by_dim) << " total " << r.quotient.total() << '\n';
      if (r.rips) os << "vr" << detail::join_counts(r.rips->by_dim) << " total " << r.rips->total() << '\n';
    }
    if (alpha_q) os << "alpha quotient " << text::format_real(*alpha_q) << '\n';
    if (alpha_vr) os << "alpha vr " << text::format_real(*alpha_vr) << '\n';
  });
  for (const auto& r : reports) err << "build_ms " << r.label << ' ' << r.build_ms << '\n';
  return 0;
}

}  // namespace qrips::cli
