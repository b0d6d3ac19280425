#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace tvsyn::cli {

/// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitAssumption = 3;
inline constexpr int kExitSolver = 4;

struct RunConfig {
  /// factor | synth | dual | bounds | hankel | mixsens | simulate | gen
  std::string command;
  std::string t1, t2, t3;
  std::string w, v, p;
  /// Dense distance-problem symbol B, used instead of T1/T2/T3.
  std::string symbol;
  /// Truncation order; 0 = ambient.
  int n = 0;
  /// Leading block of the inputs to work in; 0 = full input dimension.
  int ambient = 0;
  std::vector<int> n_list;
  double tol = 1e-8;
  /// Invertibility threshold for A1/A3/closedness (condition number <= 1/assumption_tol).
  double assumption_tol = 1e-12;
  std::uint64_t seed = 0;
  /// Output directory.
  std::string out = ".";
  /// Matrix file format for outputs: csv | json.
  std::string format = "csv";
  int sdp_max_iter = 5000;
  double sdp_tol = 1e-4;
  int bisection_iterations = 12;

  // simulate
  std::string q;
  /// "worst", "random" (seeded) or a path to a vector file.
  std::string disturbance = "worst";

  // gen
  std::string kind = "random_causal";  // or "symbol"
  int dim = 0;
  double decay = 1.0;
  int period = 1;
  std::vector<double> impulse;
  double shift = 0.0;
  std::string name;
};

/// Runs one command. Messages go to `err`; reports and matrices to config.out.
int run(const RunConfig& config, std::ostream& err);

/// Parses argv with CLI11. Returns nullopt after printing help or a usage
/// error; exit_code is then set.
std::optional<RunConfig> parse_args(int argc, const char* const* argv, int& exit_code);

}  // namespace tvsyn::cli
