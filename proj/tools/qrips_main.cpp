// qrips: build quotient Vietoris-Rips filtrations and compare them with the
// exact Vietoris-Rips filtration.

#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "qrips/cli.hpp"

namespace {

void add_common(CLI::App& cmd, qrips::cli::RunConfig& cfg) {
  cmd.add_option("-i,--input", cfg.inputs, "Input file (repeatable)");
  cmd.add_option("--generate", cfg.generators,
                 "Synthetic input <name>:<count>; names: circle, torus, sphere<k>, cube<d>");
  cmd.add_option("--seed", cfg.seed, "Seed for --generate")->capture_default_str();
  const std::map<std::string, qrips::cli::InputFormat> formats{
      {"points", qrips::cli::InputFormat::Points},
      {"lower-distance", qrips::cli::InputFormat::LowerDistance}};
  cmd.add_option("--format", cfg.format, "Input format: points | lower-distance")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  auto* thr = cmd.add_option("--threshold", cfg.threshold, "Filtration threshold R > 0");
  cmd.add_flag("--enclosing", "Use the enclosing radius as threshold (default)")->excludes(thr);
  cmd.add_option("--max-dim", cfg.max_dim, "Highest homology degree")->capture_default_str();
  cmd.add_option("--max-points", cfg.max_points, "Refuse inputs with more points")->capture_default_str();
  cmd.add_option("-o,--out", cfg.out_path, "Write the main output here instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quotient Vietoris-Rips filtrations"};
  app.require_subcommand(1);
  qrips::cli::RunConfig cfg;

  auto* build = app.add_subcommand("build", "Build the filtered 1-skeleton of the quotient tower");
  add_common(*build, cfg);
  build->add_option("--sparse-out", cfg.sparse_out, "Also write sparse 'i j d' triples here");

  auto* pers = app.add_subcommand("persistence", "Barcode of the quotient (or --vr exact) filtration");
  add_common(*pers, cfg);
  pers->add_flag("--vr", cfg.vr, "Exact Vietoris-Rips barcode instead");
  pers->add_option("--barcode-out", cfg.barcode_out, "Write the barcode here");
  pers->add_flag("--keep-zero", cfg.keep_zero_length, "Keep zero-length intervals");
  pers->add_option("--rips-cap", cfg.rips_cap, "Point cap for --vr")->capture_default_str();

  auto* compare = app.add_subcommand("compare", "Multiplicative bottleneck ratios vs exact Vietoris-Rips");
  add_common(*compare, cfg);
  compare->add_option("--compare-cap", cfg.compare_cap, "Point cap for the exact oracle")
      ->capture_default_str();

  auto* stats = app.add_subcommand("stats", "Simplex counts and growth exponents");
  add_common(*stats, cfg);
  stats->add_flag("--vr", cfg.vr, "Also count the Vietoris-Rips filtration");

  CLI11_PARSE(app, argc, argv);

  try {
    if (build->parsed()) return qrips::cli::cmd_build(cfg, std::cout, std::cerr);
    if (pers->parsed()) return qrips::cli::cmd_persistence(cfg, std::cout, std::cerr);
    if (compare->parsed()) return qrips::cli::cmd_compare(cfg, std::cout, std::cerr);
    if (stats->parsed()) return qrips::cli::cmd_stats(cfg, std::cout, std::cerr);
  } catch (const qrips::cli::CliError& e) {
    std::cerr << "qrips: " << e.what() << '\n';
    return e.code();
  } catch (const std::exception& e) {
    std::cerr << "qrips: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
