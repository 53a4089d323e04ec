// qgame: equilibrium reports, entanglement sweeps and oracle verification for
// quantized symmetric 2x2 games.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qgame/commands.hpp"

int main(int argc, char** argv) {
  namespace cli = qgame::cli;

  CLI::App app{"Quantized symmetric 2x2 games: equilibria, sweeps, checks"};
  app.require_subcommand(1);

  std::string game_path;
  std::string out_path;
  double x = 0.5;
  int resolution = cli::kDefaultSweepResolution;
  cli::VerifySettings settings;

  auto* analyze = app.add_subcommand("analyze", "JSON equilibrium report at one X");
  analyze->add_option("--game", game_path, "JSON game definition")->required();
  analyze->add_option("--x", x, "entanglement parameter |alpha|^2");
  analyze->add_option("--grid", settings.grid_n, "verification grid size");
  analyze->add_option("--tol", settings.tol, "verification tolerance");

  auto* sweep = app.add_subcommand("sweep", "CSV of equilibrium payoffs over X");
  sweep->add_option("--game", game_path, "JSON game definition")->required();
  sweep->add_option("--resolution", resolution, "number of X intervals");
  sweep->add_option("--out", out_path, "output CSV path")->required();

  auto* verify = app.add_subcommand("verify", "density-matrix oracle checks");
  verify->add_option("--game", game_path, "JSON game definition")->required();
  verify->add_option("--x", x, "entanglement parameter |alpha|^2");
  verify->add_option("--grid", settings.grid_n, "(p, q) and deviation grid size");
  verify->add_option("--tol", settings.tol, "tolerance on deviations");

  auto* families = app.add_subcommand(
      "families", "CSV comparing Chicken, Leader and Secret Meeting over X");
  families->add_option("--out", out_path, "output CSV path")->required();
  families->add_option("--resolution", resolution, "number of X intervals");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cli::kOk : cli::kParseError;
  }

  if (*analyze) return cli::run_analyze(game_path, x, settings, std::cout, std::cerr);
  if (*sweep) return cli::run_sweep(game_path, resolution, out_path, std::cerr);
  if (*verify) return cli::run_verify(game_path, x, settings, std::cout, std::cerr);
  return cli::run_families(out_path, resolution, std::cerr);
}
