#pragma once

#include <optional>
#include <string>

namespace torricelli::cli {

// Exit codes shared by every command.
inline constexpr int kExitSuccess = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitNonConvergence = 2;
inline constexpr int kExitDisagreement = 3;
inline constexpr int kExitDegenerateProbe = 4;

// Unset optionals fall back to the input file's options block, then to the
// built-in defaults (tolerance 1e-9, max iterations 10000).
struct SolveArgs {
  std::string input_path;
  std::optional<double> tolerance;
  std::optional<int> max_iterations;
  std::string output_path;  // empty: report to standard output
};

struct VerifyArgs {
  std::string input_path;
  std::string at;  // comma-separated probe coordinates
  std::optional<double> tolerance;  // default 1e-8
  std::string output_path;
};

struct ClassifyArgs {
  std::string input_path;
  std::string output_path;
};

struct OracleArgs {
  std::string input_path;
  int levels = 6;
  int per_level = 16;
  std::optional<double> tolerance;
  std::optional<int> max_iterations;
  std::string output_path;
};

int run_solve(const SolveArgs& args);
int run_verify(const VerifyArgs& args);
int run_classify(const ClassifyArgs& args);
int run_sphere_solve(const SolveArgs& args);
int run_oracle_compare(const OracleArgs& args);

}  // namespace torricelli::cli
