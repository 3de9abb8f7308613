#include "app.hpp"

#include <CLI11.hpp>
#include <fstream>

#include "commands.hpp"

namespace dsatom::cli {

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hydrogen atom in de Sitter and anti-de Sitter space-times", "dsatom"};
  app.require_subcommand(1);
  app.set_config("--config", "", "INI file; [command] sections hold per-command keys");

  CommonOptions common;
  app.add_option("--geometry", common.geometry, "ds, ads or flat")->capture_default_str();
  app.add_option("--out", common.out, "output file (default stdout)");
  app.add_option("--format", common.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_option("--seed", common.seed, "seed for randomized sweeps")->capture_default_str();
  app.add_option("--jobs", common.jobs, "worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  ClassifyOptions co;
  auto* classify = app.add_subcommand("classify", "turning-point topology per parameter point");
  classify->add_option("--epsilon", co.epsilon, "energy range")->capture_default_str();
  classify->add_option("--L", co.L, "angular momentum range")->capture_default_str();
  classify->add_option("--e2", co.e2, "coupling range")->capture_default_str();
  classify->add_option("--M", co.M, "mass range")->capture_default_str();
  classify->add_option("--rho", co.rho, "curvature radius range")->capture_default_str();
  classify->add_option("--random", co.random, "draw N random points in the ranges")
      ->capture_default_str();

  SpectrumOptions so;
  auto* spectrum = app.add_subcommand("spectrum", "energy levels (dimensionless E, M)");
  spectrum->add_option("--methods", so.methods, "exact,wkb,shooting,resonance,complex-heun")
      ->capture_default_str();
  spectrum->add_option("--M", so.M, "M rho range")->capture_default_str();
  spectrum->add_option("--alpha", so.alpha, "coupling range")->capture_default_str();
  spectrum->add_option("--rho", so.rho, "curvature radius for the wkb method")->capture_default_str();
  spectrum->add_option("--l", so.l, "orbital numbers")->capture_default_str();
  spectrum->add_option("--n", so.n, "radial numbers (exact, wkb, complex-heun)")
      ->capture_default_str();
  spectrum->add_option("--window", so.window, "E_lo:E_hi for shooting and resonance");
  spectrum->add_option("--grid", so.grid, "resonance scan grid size")->capture_default_str();

  TunnelOptions to;
  auto* tunnel = app.add_subcommand("tunnel", "Gamow factor through the dS barrier");
  tunnel->add_option("--rho", to.rho, "curvature radii")->capture_default_str();
  tunnel->add_option("--M", to.M, "mass")->capture_default_str();
  tunnel->add_option("--e2", to.e2, "coupling")->capture_default_str();
  tunnel->add_option("--n", to.n, "radial number")->capture_default_str();
  tunnel->add_option("--l", to.l, "orbital number")->capture_default_str();

  HeunEvalOptions ho;
  auto* heun = app.add_subcommand("heun-eval", "local Heun solution and radial function");
  heun->add_option("--E", ho.E, "dimensionless energy")->capture_default_str();
  heun->add_option("--alpha", ho.alpha, "coupling")->capture_default_str();
  heun->add_option("--M", ho.M, "M rho")->capture_default_str();
  heun->add_option("--l", ho.l, "orbital number")->capture_default_str();
  heun->add_option("--branch", ho.branch, "exponent branch ++, +-, -+ or --")->capture_default_str();
  heun->add_option("--x", ho.x, "sample points (real radius X)")->capture_default_str();

  DiracChartOptions dopt;
  auto* dirac = app.add_subcommand("dirac-chart", "singular points of the Dirac radial system");
  dirac->add_option("--epsilon", dopt.epsilon, "energy")->capture_default_str();
  dirac->add_option("--e2", dopt.e2, "coupling")->capture_default_str();
  dirac->add_option("--M", dopt.M, "mass")->capture_default_str();
  dirac->add_option("--nu", dopt.nu, "j + 1/2")->capture_default_str();
  dirac->add_option("--parity", dopt.parity, "+1 or -1")->capture_default_str();
  dirac->add_option("--component", dopt.component, "F or G")->capture_default_str();
  dirac->add_flag("--integrate", dopt.integrate, "dump (F, G) along a real path");
  dirac->add_option("--y-start", dopt.y_start, "path start")->capture_default_str();
  dirac->add_option("--y-end", dopt.y_end, "path end")->capture_default_str();
  dirac->add_option("--samples", dopt.samples, "path samples")->capture_default_str();

  for (auto* sub : {classify, spectrum, tunnel, heun, dirac}) sub->fallthrough();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "config error: " << e.what() << "\n";
    return 2;
  }

  Table table;
  try {
    if (*classify) table = cmd_classify(common, co);
    else if (*spectrum) table = cmd_spectrum(common, so);
    else if (*tunnel) table = cmd_tunnel(common, to);
    else if (*heun) table = cmd_heun_eval(common, ho);
    else table = cmd_dirac_chart(common, dopt);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return 2;
  }

  const std::string text = common.format == "json" ? to_json(table) : to_csv(table);
  if (common.out.empty()) {
    out << text;
  } else {
    std::ofstream f(common.out, std::ios::binary);
    if (!f || !(f << text)) {
      err << "config error: cannot write " << common.out << "\n";
      return 2;
    }
  }
  for (const auto& w : table.warnings) err << "warning: " << w << "\n";
  return table.any_failed ? 1 : 0;
}

}  // namespace dsatom::cli
