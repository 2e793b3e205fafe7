#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>

#include "lie2/cli.hpp"

using namespace lie2;

namespace {

bool parse_grid(const std::string& text, GridSpec* grid) {
  int n = 0, m = 0, k = 0;
  int got = std::sscanf(text.c_str(), "%d,%d,%d", &n, &m, &k);
  if (got < 1) return false;
  if (got < 2) m = n;
  if (got < 3) k = 8;
  try {
    *grid = GridSpec(n, m, k);
  } catch (const PreconditionError&) {
    return false;
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"integration of strict Lie 2-algebras: path development, the "
               "correction ODE, the Morita morphism and its inverse, and "
               "integration of non-strict morphisms"};
  app.require_subcommand(1);

  cli::RunConfig cfg;
  std::string grid_text = "64";
  std::string format_text = "human";

  app.add_option("--grid", grid_text, "grid sizes N[,M[,K]] (default 64)");
  app.add_option("--tol", cfg.tol, "tolerance override (> 0)");
  app.add_option("--seed", cfg.seed, "seed for randomized checks");
  app.add_option("--format", format_text, "output format: human | machine")
      ->check(CLI::IsMember({"human", "machine"}));

  const char* names[] = {"check-algebra", "check-crossed-module", "psi",
                         "roundtrip", "integrate-morphism", "convergence"};
  const char* descs[] = {
      "antisymmetry and Jacobi residuals of algebra files",
      "algebra- and group-level crossed module residuals",
      "run the Morita morphism on a bigon and report diagnostics",
      "inverse-map round trip and extension-independence cube",
      "integrate a non-strict morphism along a generated homotopy",
      "observed convergence orders of a named check"};
  for (int i = 0; i < 6; ++i) {
    CLI::App* sub = app.add_subcommand(names[i], descs[i]);
    sub->fallthrough();
    sub->add_option("--input,input", cfg.inputs,
                    "definition files (or builtin names / check names)");
    sub->callback([&cfg, i, names] { cfg.command = names[i]; });
  }

  CLI11_PARSE(app, argc, argv);

  if (!parse_grid(grid_text, &cfg.grid)) {
    std::cerr << "invalid --grid (need N[,M[,K]], each >= 8)\n";
    return 2;
  }
  if (cfg.tol < 0) {
    std::cerr << "--tol must be positive\n";
    return 2;
  }
  if (cfg.tol == 0.0) {
    if (const char* env = std::getenv("LIE2_DEFAULT_TOL")) {
      char* end = nullptr;
      double v = std::strtod(env, &end);
      if (end != env && v > 0) cfg.tol = v;
    }
  }
  cfg.format =
      format_text == "machine" ? OutputFormat::Machine : OutputFormat::Human;

  cli::RunResult res = cli::run_command(cfg);
  std::cout << res.report.render(cfg.format);
  if (!res.dump.empty()) std::cout << res.dump;
  return res.exit_code;
}
