#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "arcparam/cli.hpp"
#include "arcparam/error.hpp"

int main(int argc, char** argv) {
  using arcparam::cli::RunConfig;
  RunConfig cfg;
  std::string arcs, divisor, emit, report, plot;
  std::vector<std::string> tolerances;

  CLI::App app{"Schur and Verblunsky parameters of measures on unions of arcs"};
  app.require_subcommand(1);

  auto common = [&](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "Seed for randomized checks");
    sub->add_option("--samples", cfg.samples, "Sample count (random points or points per ring)");
    sub->add_option("--report", report, "JSON report path (default: stdout)");
    sub->add_option("--tol", tolerances, "Tolerance override name=value")->take_all();
  };
  auto with_inputs = [&](CLI::App* sub) {
    sub->add_option("--arcs", arcs, "Arc set JSON")->required();
    sub->add_option("--divisor", divisor, "Divisor JSON");
    sub->add_option("--level", cfg.level, "Quadrature level");
    sub->add_option("-N", cfg.N, "Number of parameters");
    sub->add_option("--radius", cfg.radius, "Schur sampling radius");
    sub->add_option("--grid", cfg.grid, "Schur sampling grid size");
    sub->add_option("--emit", emit, "CSV output (directory for pipeline and sweep)");
    sub->add_option("--plot", plot, "SVG plot of the parameters");
    common(sub);
  };

  auto* onearc = app.add_subcommand("verify-onearc", "Residual checks of the one-arc model");
  onearc->add_option("--r", cfg.r_values, "Values of r in (0, 1)")->take_all();
  common(onearc);
  with_inputs(app.add_subcommand("mfunc", "Build M(z, D) and sample it"));
  with_inputs(app.add_subcommand("measure", "Quadrature representation of the measure"));
  with_inputs(app.add_subcommand("verblunsky", "Verblunsky coefficients of the measure"));
  with_inputs(app.add_subcommand("pipeline", "End-to-end run with cross-checks"));
  auto* sweep = app.add_subcommand("sweep", "Parameter tables over a divisor grid");
  with_inputs(sweep);
  sweep->add_option("--points", cfg.sweep_points, "Divisor angles per gap");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : arcparam::cli::kExitUsage;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  if (!arcs.empty()) cfg.arcs_path = arcs;
  if (!divisor.empty()) cfg.divisor_path = divisor;
  if (!emit.empty()) cfg.emit = emit;
  if (!report.empty()) cfg.report = report;
  if (!plot.empty()) cfg.plot = plot;
  try {
    for (const auto& t : tolerances) {
      const auto eq = t.find('=');
      if (eq == std::string::npos) throw arcparam::Error(arcparam::ErrorCode::InvalidArgument, "cli", "--tol expects name=value");
      cfg.tol.set(t.substr(0, eq), std::stod(t.substr(eq + 1)));
    }
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return arcparam::cli::kExitUsage;
  }
  return arcparam::cli::run(cfg, std::cout, std::cerr);
}
