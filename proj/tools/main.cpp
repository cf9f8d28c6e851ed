#include <CLI11.hpp>

#include "commands.hpp"

namespace cli = torricelli::cli;

int main(int argc, char** argv) {
  CLI::App app{
      "Weighted Fermat-Torricelli points: solve, certify, and cross-check "
      "configurations in the plane, in space, and on the unit sphere."};
  app.require_subcommand(1);

  cli::SolveArgs solve_args;
  double solve_tol = 1e-9;
  int solve_iter = 10000;
  CLI::App* solve = app.add_subcommand(
      "solve", "Locate the weighted Fermat-Torricelli point");
  solve->add_option("input", solve_args.input_path, "configuration JSON file")
      ->required();
  CLI::Option* solve_tol_opt = solve->add_option(
      "--tolerance", solve_tol, "relative residual tolerance (default 1e-9)");
  CLI::Option* solve_iter_opt = solve->add_option(
      "--max-iter", solve_iter, "iteration budget (default 10000)");
  solve->add_option("--output", solve_args.output_path,
                    "write the report here instead of standard output");

  cli::VerifyArgs verify_args;
  double verify_tol = 1e-8;
  CLI::App* verify = app.add_subcommand(
      "verify", "Check the balancing certificate at a probe point");
  verify->add_option("input", verify_args.input_path, "configuration JSON file")
      ->required();
  verify
      ->add_option("--at", verify_args.at,
                   "probe point as comma-separated coordinates x,y[,z]")
      ->required();
  CLI::Option* verify_tol_opt = verify->add_option(
      "--tolerance", verify_tol, "relative certificate tolerance (default 1e-8)");
  verify->add_option("--output", verify_args.output_path,
                     "write the report here instead of standard output");

  cli::ClassifyArgs classify_args;
  CLI::App* classify = app.add_subcommand(
      "classify", "Report the vertex absorption test for every anchor");
  classify
      ->add_option("input", classify_args.input_path, "configuration JSON file")
      ->required();
  classify->add_option("--output", classify_args.output_path,
                       "write the report here instead of standard output");

  cli::SolveArgs sphere_args;
  double sphere_tol = 1e-9;
  int sphere_iter = 10000;
  CLI::App* sphere_solve = app.add_subcommand(
      "sphere-solve", "Locate the geodesic minimizer on the unit sphere");
  sphere_solve
      ->add_option("input", sphere_args.input_path, "configuration JSON file")
      ->required();
  CLI::Option* sphere_tol_opt = sphere_solve->add_option(
      "--tolerance", sphere_tol, "relative residual tolerance (default 1e-9)");
  CLI::Option* sphere_iter_opt = sphere_solve->add_option(
      "--max-iter", sphere_iter, "iteration budget (default 10000)");
  sphere_solve->add_option("--output", sphere_args.output_path,
                           "write the report here instead of standard output");

  cli::OracleArgs oracle_args;
  double oracle_tol = 1e-9;
  int oracle_iter = 10000;
  CLI::App* oracle = app.add_subcommand(
      "oracle-compare",
      "Cross-check the solver against brute-force grid refinement "
      "(spherical configurations use a 0.5-degree grid)");
  oracle->add_option("input", oracle_args.input_path, "configuration JSON file")
      ->required();
  oracle->add_option("--levels", oracle_args.levels,
                     "grid refinement levels (default 6)");
  oracle->add_option("--per-level", oracle_args.per_level,
                     "grid points per axis per level (default 16)");
  CLI::Option* oracle_tol_opt = oracle->add_option(
      "--tolerance", oracle_tol, "solver residual tolerance (default 1e-9)");
  CLI::Option* oracle_iter_opt = oracle->add_option(
      "--max-iter", oracle_iter, "solver iteration budget (default 10000)");
  oracle->add_option("--output", oracle_args.output_path,
                     "write the report here instead of standard output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kExitInputError;
  }

  if (app.got_subcommand(solve)) {
    if (solve_tol_opt->count()) solve_args.tolerance = solve_tol;
    if (solve_iter_opt->count()) solve_args.max_iterations = solve_iter;
    return cli::run_solve(solve_args);
  }
  if (app.got_subcommand(verify)) {
    if (verify_tol_opt->count()) verify_args.tolerance = verify_tol;
    return cli::run_verify(verify_args);
  }
  if (app.got_subcommand(classify)) return cli::run_classify(classify_args);
  if (app.got_subcommand(sphere_solve)) {
    if (sphere_tol_opt->count()) sphere_args.tolerance = sphere_tol;
    if (sphere_iter_opt->count()) sphere_args.max_iterations = sphere_iter;
    return cli::run_sphere_solve(sphere_args);
  }
  if (oracle_tol_opt->count()) oracle_args.tolerance = oracle_tol;
  if (oracle_iter_opt->count()) oracle_args.max_iterations = oracle_iter;
  return cli::run_oracle_compare(oracle_args);
}
