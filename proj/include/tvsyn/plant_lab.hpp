#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tvsyn/operator_core.hpp"

namespace tvsyn {

enum class PlantKind { kRandomCausal, kPeriodic, kLtiToeplitz, kExplicit };

struct PlantSpec {
  PlantKind kind = PlantKind::kRandomCausal;
  int dim = 0;
  std::uint64_t seed = 0;
  /// Entry (i, j) is drawn from a standard normal truncated to [-1, 1] and
  /// scaled by decay^(i-j).
  double decay = 1.0;
  int period = 1;
  std::vector<double> impulse_response;
  /// Added to the diagonal after drawing; +2 keeps factorization corpora well conditioned.
  double diagonal_shift = 0.0;
  Matrix explicit_matrix;
};

PlantKind parse_plant_kind(const std::string& name);
std::string to_string(PlantKind kind);

/// Deterministic in the seed. Throws InvalidInputError on bad spec fields.
CausalOperator generate(const PlantSpec& spec);

/// Dense symbol with entries N(0,1) * decay^|i-j| (both triangles).
Matrix generate_symbol(int dim, std::uint64_t seed, double decay = 1.0);

enum class MatrixFormat { kCsv, kJson };

MatrixFormat parse_format(const std::string& name);
/// From the file extension (.csv / .json); InvalidInputError otherwise.
MatrixFormat format_from_path(const std::string& path);

/// CSV: header "# tvsyn-matrix v1, dim=N" then N rows of N values (%.17g).
/// JSON: {"dim": N, "entries": [[i, j, value], ...]}, 0-based, unlisted entries zero.
std::string serialize_matrix(const Matrix& m, MatrixFormat format);
Matrix parse_matrix(const std::string& text, MatrixFormat format);

Matrix load_matrix(const std::string& path, MatrixFormat format);
Matrix load_matrix(const std::string& path);
/// Throws CausalityViolationError naming offending 1-based entries.
CausalOperator load_operator(const std::string& path, MatrixFormat format);
CausalOperator load_operator(const std::string& path);
void save_operator(const Matrix& m, const std::string& path, MatrixFormat format);
void save_operator(const CausalOperator& m, const std::string& path, MatrixFormat format);

struct SimulationResult {
  Vector z;
  double gain = 0.0;
};

/// z = (T1 - T2 Q T3) w, gain = ||z|| / ||w||. Throws InvalidInputError for w = 0.
SimulationResult simulate_closed_loop(const CausalOperator& t1, const CausalOperator& t2,
                                      const CausalOperator& t3, const CausalOperator& q,
                                      const Vector& w);

struct WorstCaseDisturbance {
  Vector w;
  /// True when the closed loop is zero and w is just e_1.
  bool degenerate = false;
};

/// Top right singular vector of T1 - T2 Q T3, largest-magnitude entry positive.
WorstCaseDisturbance worst_case_disturbance(const CausalOperator& t1, const CausalOperator& t2,
                                            const CausalOperator& t3, const CausalOperator& q);

}  // namespace tvsyn
