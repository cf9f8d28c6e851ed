#include "commands.hpp"

#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <unistd.h>

#include "config_io.hpp"
#include "torricelli/torricelli.hpp"

namespace torricelli::cli {

namespace {

bool use_color() {
  return std::getenv("NO_COLOR") == nullptr && isatty(STDERR_FILENO) != 0;
}

void diagnostic(const std::string& message) {
  if (use_color())
    std::cerr << "\x1b[31merror:\x1b[0m " << message << "\n";
  else
    std::cerr << "error: " << message << "\n";
}

bool emit(const Json& report, const std::string& output_path) {
  const std::string text = dump_report(report);
  if (output_path.empty()) {
    std::cout << text;
    return true;
  }
  std::ofstream out(output_path, std::ios::binary);
  out << text;
  if (!out) {
    diagnostic("cannot write report to " + output_path);
    return false;
  }
  return true;
}

Json warnings_json(const std::vector<Warning>& warnings) {
  Json list = Json::array();
  for (Warning w : warnings) list.push_back(to_string(w));
  return list;
}

// `index_map`, when given, translates anchor indices back to the caller's
// (pre-merge) numbering.
Json balance_json(const BalanceReport& report,
                  const std::vector<std::size_t>* index_map = nullptr) {
  Json balance;
  balance["kind"] = "directional";
  balance["dimension"] = report.dimension;
  balance["residual"] = to_json(report.residual);
  balance["residual_norm"] = report.residual_norm;
  balance["weight_sum"] = report.weight_sum;
  balance["tolerance"] = report.tolerance;
  balance["passed"] = report.passed;
  Json directions = Json::array();
  for (const DirectionalBalance& entry : report.per_direction) {
    Json row;
    row["anchor"] = index_map ? (*index_map)[entry.anchor] : entry.anchor;
    row["cos_sum"] = entry.cos_sum;
    row["sin_sum"] = entry.sin_sum;
    row["component_sums"] = entry.component_sums;
    directions.push_back(std::move(row));
  }
  balance["per_direction"] = std::move(directions);
  return balance;
}

Json vertex_balance_json(std::size_t anchor, double pull, double weight) {
  Json balance;
  balance["kind"] = "vertex";
  balance["anchor"] = anchor;
  balance["vertex_pull"] = pull;
  balance["weight"] = weight;
  balance["passed"] = pull <= weight;
  return balance;
}

// Certificate block for a solve report: the directional balance at a
// floating minimizer, or the vertex test at an absorbed anchor.
Json solve_balance(const Configuration& config, const SolverOutcome& outcome,
                   double tolerance) {
  std::vector<std::size_t> first_seen;
  const Configuration merged = config.merge_duplicates(&first_seen);
  auto vertex_block = [&](std::size_t input_index) {
    for (std::size_t m = 0; m < first_seen.size(); ++m)
      if (coincident(merged.points()[m].position,
                     config.points()[input_index].position))
        return vertex_balance_json(first_seen[m], vertex_pull(merged, m),
                                   merged.points()[m].weight);
    return vertex_balance_json(input_index, 0.0, 0.0);  // unreachable
  };
  if (outcome.kind == SolveCase::Absorbed)
    return vertex_block(outcome.absorbed_index);
  try {
    return balance_json(verify(config, outcome.minimizer, tolerance));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::AtAnchor && e.index() >= 0)
      return vertex_block(static_cast<std::size_t>(e.index()));
    throw;
  }
}

Json sphere_solve_balance(const SphereConfiguration& config,
                          const SphereSolverOutcome& outcome,
                          double tolerance) {
  std::vector<std::size_t> first_seen;
  const SphereConfiguration merged =
      merge_sphere_duplicates(config, &first_seen);
  auto vertex_block = [&](std::size_t input_index) {
    for (std::size_t m = 0; m < first_seen.size(); ++m)
      if (distance(merged.points()[m].position.coords(),
                   config.points()[input_index].position.coords()) <
          kSphereAnchorDistance)
        return vertex_balance_json(first_seen[m], sphere_vertex_pull(merged, m),
                                   merged.points()[m].weight);
    return vertex_balance_json(input_index, 0.0, 0.0);  // unreachable
  };
  if (outcome.kind == SolveCase::Absorbed)
    return vertex_block(outcome.absorbed_index);
  try {
    const TangentVector residual =
        geodesic_balancing_residual(config, outcome.minimizer);
    Json balance;
    balance["kind"] = "geodesic";
    balance["residual"] = to_json(residual.vec);
    balance["residual_norm"] = residual.norm();
    balance["weight_sum"] = config.weight_sum();
    balance["tolerance"] = tolerance;
    balance["passed"] = residual.norm() <= tolerance * config.weight_sum();
    return balance;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::AtAnchor && e.index() >= 0)
      return vertex_block(static_cast<std::size_t>(e.index()));
    throw;
  }
}

std::vector<double> parse_probe(const std::string& text) {
  std::vector<double> values;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = text.find(',', start);
    const std::string token =
        comma == std::string::npos ? text.substr(start)
                                   : text.substr(start, comma - start);
    try {
      std::size_t used = 0;
      values.push_back(std::stod(token, &used));
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidArgument,
                  "--at: malformed coordinate '" + token + "'");
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return values;
}

}  // namespace

int run_solve(const SolveArgs& args) {
  try {
    const ConfigFile file = load_config(args.input_path);
    if (file.on_sphere()) {
      diagnostic(
          "dimension: this configuration lives on the sphere; use "
          "sphere-solve");
      return kExitInputError;
    }
    const Configuration& config = file.euclidean();
    SolverOptions options;
    options.residual_tolerance =
        args.tolerance ? *args.tolerance
                       : file.residual_tolerance.value_or(1e-9);
    options.max_iterations = args.max_iterations
                                 ? *args.max_iterations
                                 : file.max_iterations.value_or(10000);
    const SolverOutcome outcome = solve(config, options);

    Json report;
    report["input_digest"] = file.digest;
    report["command"] = "solve";
    report["options"] = {{"residual_tolerance", options.residual_tolerance},
                         {"max_iterations", options.max_iterations}};
    Json summary;
    summary["case"] =
        outcome.kind == SolveCase::Absorbed ? "absorbed" : "floating";
    summary["minimizer"] = to_json(outcome.minimizer);
    if (outcome.kind == SolveCase::Absorbed)
      summary["absorbed_index"] = outcome.absorbed_index;
    summary["residual_norm"] = outcome.residual_norm;
    summary["objective_value"] = outcome.objective_value;
    summary["iterations"] = outcome.iterations;
    summary["converged"] = outcome.converged;
    report["outcome"] = std::move(summary);
    report["balance"] =
        solve_balance(config, outcome, 10.0 * options.residual_tolerance);
    report["warnings"] = warnings_json(outcome.warnings);
    if (!emit(report, args.output_path)) return kExitInputError;
    return outcome.converged ? kExitSuccess : kExitNonConvergence;
  } catch (const std::exception& e) {
    diagnostic(e.what());
    return kExitInputError;
  }
}

int run_verify(const VerifyArgs& args) {
  try {
    const ConfigFile file = load_config(args.input_path);
    if (file.on_sphere()) {
      diagnostic(
          "dimension: verify covers planar and spatial configurations; "
          "sphere-solve reports its own certificate");
      return kExitInputError;
    }
    const Configuration& config = file.euclidean();
    const std::vector<double> values = parse_probe(args.at);
    if (static_cast<int>(values.size()) != config.dimension()) {
      diagnostic("--at: expected " + std::to_string(config.dimension()) +
                 " coordinates, got " + std::to_string(values.size()));
      return kExitInputError;
    }
    const Point probe = config.dimension() == 2
                            ? Vec(values[0], values[1])
                            : Vec(values[0], values[1], values[2]);

    BalanceReport balance;
    try {
      balance = verify(config, probe,
                       args.tolerance.value_or(kDefaultVerifyTolerance));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::AtAnchor) {
        diagnostic(std::string(e.what()) +
                   " (the certificate is undefined there; see classify)");
        return kExitDegenerateProbe;
      }
      throw;
    }

    Json report;
    report["input_digest"] = file.digest;
    report["command"] = "verify";
    report["probe"] = to_json(probe);
    report["balance"] = balance_json(balance);
    if (!emit(report, args.output_path)) return kExitInputError;
    return balance.passed ? kExitSuccess : kExitDisagreement;
  } catch (const std::exception& e) {
    diagnostic(e.what());
    return kExitInputError;
  }
}

int run_classify(const ClassifyArgs& args) {
  try {
    const ConfigFile file = load_config(args.input_path);
    Json rows = Json::array();
    bool merged_any = false;

    if (file.on_sphere()) {
      std::vector<std::size_t> first_seen;
      const SphereConfiguration merged =
          merge_sphere_duplicates(file.sphere(), &first_seen);
      merged_any = merged.size() != file.sphere().size();
      for (std::size_t m = 0; m < merged.size(); ++m) {
        Json row;
        row["index"] = first_seen[m];
        row["weight"] = merged.points()[m].weight;
        if (!(merged.points()[m].weight > 0.0)) {
          row["vertex_pull"] = nullptr;
          row["verdict"] = "inactive";
        } else {
          const double pull = sphere_vertex_pull(merged, m);
          row["vertex_pull"] = pull;
          row["verdict"] = merged.active().size() == 1
                               ? "absorbed (only anchor)"
                               : (pull <= merged.points()[m].weight
                                      ? "absorbed"
                                      : "floating possible");
        }
        rows.push_back(std::move(row));
      }
    } else {
      std::vector<std::size_t> first_seen;
      const Configuration merged =
          file.euclidean().merge_duplicates(&first_seen);
      merged_any = merged.size() != file.euclidean().size();
      for (std::size_t m = 0; m < merged.size(); ++m) {
        Json row;
        row["index"] = first_seen[m];
        row["weight"] = merged.points()[m].weight;
        if (!(merged.points()[m].weight > 0.0)) {
          row["vertex_pull"] = nullptr;
          row["verdict"] = "inactive";
        } else {
          const double pull = vertex_pull(merged, m);
          row["vertex_pull"] = pull;
          row["verdict"] = merged.active().size() == 1
                               ? "absorbed (only anchor)"
                               : (pull <= merged.points()[m].weight
                                      ? "absorbed"
                                      : "floating possible");
        }
        rows.push_back(std::move(row));
      }
    }

    Json report;
    report["input_digest"] = file.digest;
    report["command"] = "classify";
    report["dimension"] =
        file.on_sphere() ? Json("sphere") : Json(file.euclidean().dimension());
    report["merged_duplicates"] = merged_any;
    report["anchors"] = std::move(rows);
    if (!emit(report, args.output_path)) return kExitInputError;
    return kExitSuccess;
  } catch (const std::exception& e) {
    diagnostic(e.what());
    return kExitInputError;
  }
}

int run_sphere_solve(const SolveArgs& args) {
  try {
    const ConfigFile file = load_config(args.input_path);
    if (!file.on_sphere()) {
      diagnostic("dimension: sphere-solve needs dimension \"sphere\"");
      return kExitInputError;
    }
    const SphereConfiguration& config = file.sphere();
    SolverOptions options;
    options.residual_tolerance =
        args.tolerance ? *args.tolerance
                       : file.residual_tolerance.value_or(1e-9);
    options.max_iterations = args.max_iterations
                                 ? *args.max_iterations
                                 : file.max_iterations.value_or(10000);
    const SphereSolverOutcome outcome = solve_on_sphere(config, options);

    Json report;
    report["input_digest"] = file.digest;
    report["command"] = "sphere-solve";
    report["options"] = {{"residual_tolerance", options.residual_tolerance},
                         {"max_iterations", options.max_iterations}};
    Json summary;
    summary["case"] =
        outcome.kind == SolveCase::Absorbed ? "absorbed" : "floating";
    summary["minimizer"] = to_json(outcome.minimizer.coords());
    if (outcome.kind == SolveCase::Absorbed)
      summary["absorbed_index"] = outcome.absorbed_index;
    summary["residual_norm"] = outcome.residual_norm;
    summary["objective_value"] = outcome.objective_value;
    summary["iterations"] = outcome.iterations;
    summary["converged"] = outcome.converged;
    report["outcome"] = std::move(summary);
    report["balance"] = sphere_solve_balance(
        config, outcome, 10.0 * options.residual_tolerance);
    report["warnings"] = warnings_json(outcome.warnings);
    if (!emit(report, args.output_path)) return kExitInputError;
    return outcome.converged ? kExitSuccess : kExitNonConvergence;
  } catch (const std::exception& e) {
    diagnostic(e.what());
    return kExitInputError;
  }
}

int run_oracle_compare(const OracleArgs& args) {
  try {
    const ConfigFile file = load_config(args.input_path);
    SolverOptions options;
    options.residual_tolerance =
        args.tolerance ? *args.tolerance
                       : file.residual_tolerance.value_or(1e-9);
    options.max_iterations = args.max_iterations
                                 ? *args.max_iterations
                                 : file.max_iterations.value_or(10000);

    Json report;
    report["input_digest"] = file.digest;
    report["command"] = "oracle-compare";
    Json solver_json, oracle_json;
    double separation = 0.0, resolution = 0.0;

    if (file.on_sphere()) {
      const SphereConfiguration& config = file.sphere();
      const SphereSolverOutcome outcome = solve_on_sphere(config, options);
      const SphereOracleResult oracle = spherical_grid_minimize(config, 0.5);
      solver_json["case"] =
          outcome.kind == SolveCase::Absorbed ? "absorbed" : "floating";
      solver_json["argmin"] = to_json(outcome.minimizer.coords());
      solver_json["objective_value"] = outcome.objective_value;
      solver_json["iterations"] = outcome.iterations;
      solver_json["converged"] = outcome.converged;
      oracle_json["argmin"] = to_json(oracle.argmin.coords());
      oracle_json["min_value"] = oracle.min_value;
      oracle_json["resolution_degrees"] = 0.5;
      oracle_json["resolution"] = oracle.resolution;
      oracle_json["cells_evaluated"] = oracle.cells_evaluated;
      separation = geodesic_distance(outcome.minimizer, oracle.argmin);
      resolution = oracle.resolution;
    } else {
      const Configuration& config = file.euclidean();
      const SolverOutcome outcome = solve(config, options);
      const OracleResult oracle =
          grid_refine_minimize(config, args.levels, args.per_level);
      solver_json["case"] =
          outcome.kind == SolveCase::Absorbed ? "absorbed" : "floating";
      solver_json["argmin"] = to_json(outcome.minimizer);
      solver_json["objective_value"] = outcome.objective_value;
      solver_json["iterations"] = outcome.iterations;
      solver_json["converged"] = outcome.converged;
      oracle_json["argmin"] = to_json(oracle.argmin);
      oracle_json["min_value"] = oracle.min_value;
      oracle_json["resolution"] = oracle.resolution;
      oracle_json["cells_evaluated"] = oracle.cells_evaluated;
      separation = distance(outcome.minimizer, oracle.argmin);
      resolution = oracle.resolution;
    }

    const double threshold = 10.0 * resolution;
    const bool agree = separation <= threshold;
    report["solver"] = std::move(solver_json);
    report["oracle"] = std::move(oracle_json);
    report["distance"] = separation;
    report["threshold"] = threshold;
    report["agree"] = agree;
    if (!emit(report, args.output_path)) return kExitInputError;
    return agree ? kExitSuccess : kExitDisagreement;
  } catch (const std::exception& e) {
    diagnostic(e.what());
    return kExitInputError;
  }
}

}  // namespace torricelli::cli
