#include "tvsyn/plant_lab.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include <json.hpp>

namespace tvsyn {

namespace {

const char kCsvHeader[] = "# tvsyn-matrix v1, dim=";

double truncated_normal(std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  for (;;) {
    const double x = normal(rng);
    if (std::abs(x) <= 1.0) return x;
  }
}

void validate_spec(const PlantSpec& spec) {
  if (spec.kind == PlantKind::kExplicit) return;
  if (spec.dim < 1) throw InvalidInputError("generate: dim must be >= 1");
  if (!(spec.decay > 0.0 && spec.decay <= 1.0)) {
    throw InvalidInputError("generate: decay must lie in (0, 1]");
  }
  if (!std::isfinite(spec.diagonal_shift)) throw InvalidInputError("generate: bad diagonal shift");
  if (spec.kind == PlantKind::kPeriodic && spec.period < 1) {
    throw InvalidInputError("generate: period must be >= 1");
  }
  if (spec.kind == PlantKind::kLtiToeplitz) {
    if (spec.impulse_response.empty()) {
      throw InvalidInputError("generate: lti_toeplitz needs a nonempty impulse response");
    }
    for (double h : spec.impulse_response) {
      if (!std::isfinite(h)) throw InvalidInputError("generate: impulse response is not finite");
    }
  }
}

std::pair<int, int> line_column(const std::string& text, std::size_t byte) {
  int line = 1;
  int column = 1;
  for (std::size_t k = 0; k < byte && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Matrix parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  int dim = -1;
  int row = 0;
  Matrix m;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (dim < 0) {
      if (line.rfind(kCsvHeader, 0) != 0) {
        throw ParseError("line 1: expected header '# tvsyn-matrix v1, dim=N'", lineno, 1);
      }
      const char* start = line.c_str() + sizeof(kCsvHeader) - 1;
      char* end = nullptr;
      const long n = std::strtol(start, &end, 10);
      if (end == start || *end != '\0' || n < 1 || n > 1000000) {
        throw ParseError("line 1: bad dim in header", lineno,
                         static_cast<int>(sizeof(kCsvHeader)));
      }
      dim = static_cast<int>(n);
      m = Matrix::Zero(dim, dim);
      continue;
    }
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    if (row >= dim) {
      throw DimensionMismatchError("line " + std::to_string(lineno) + ": more than " +
                                   std::to_string(dim) + " data rows");
    }
    int col = 0;
    std::size_t pos = 0;
    for (;;) {
      const std::size_t comma = line.find(',', pos);
      const std::string field = line.substr(pos, comma == std::string::npos ? std::string::npos
                                                                             : comma - pos);
      const std::size_t first = field.find_first_not_of(" \t");
      const std::size_t last = field.find_last_not_of(" \t");
      const int column = static_cast<int>(pos) + 1;
      if (first == std::string::npos) {
        throw ParseError("line " + std::to_string(lineno) + ", column " + std::to_string(column) +
                             ": empty field",
                         lineno, column);
      }
      const std::string token = field.substr(first, last - first + 1);
      char* end = nullptr;
      errno = 0;
      const double value = std::strtod(token.c_str(), &end);
      if (end != token.c_str() + token.size() || !std::isfinite(value)) {
        throw ParseError("line " + std::to_string(lineno) + ", column " + std::to_string(column) +
                             ": not a finite number: '" + token + "'",
                         lineno, column);
      }
      if (col >= dim) {
        throw DimensionMismatchError("line " + std::to_string(lineno) + ": more than " +
                                     std::to_string(dim) + " values");
      }
      m(row, col++) = value;
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (col != dim) {
      throw DimensionMismatchError("line " + std::to_string(lineno) + ": expected " +
                                   std::to_string(dim) + " values, found " + std::to_string(col));
    }
    ++row;
  }
  if (dim < 0) throw ParseError("empty matrix file: missing header", 1, 1);
  if (row != dim) {
    throw DimensionMismatchError("expected " + std::to_string(dim) + " data rows, found " +
                                 std::to_string(row));
  }
  return m;
}

Matrix parse_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const auto [line, column] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
    throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(column) +
                         ": invalid JSON",
                     line, column);
  }
  if (!j.is_object() || !j.contains("dim") || !j["dim"].is_number_integer()) {
    throw ParseError("JSON matrix needs an integer field \"dim\"", 0, 0);
  }
  const long long dim = j["dim"].get<long long>();
  if (dim < 1 || dim > 1000000) throw ParseError("JSON matrix: dim must be >= 1", 0, 0);
  if (!j.contains("entries") || !j["entries"].is_array()) {
    throw ParseError("JSON matrix needs an array field \"entries\"", 0, 0);
  }
  Matrix m = Matrix::Zero(dim, dim);
  std::size_t k = 0;
  for (const auto& e : j["entries"]) {
    if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer() ||
        !e[1].is_number_integer() || !e[2].is_number()) {
      throw ParseError("JSON matrix: entry " + std::to_string(k) + " is not [i, j, value]", 0, 0);
    }
    const long long i = e[0].get<long long>();
    const long long c = e[1].get<long long>();
    if (i < 0 || c < 0 || i >= dim || c >= dim) {
      throw DimensionMismatchError("JSON matrix: entry " + std::to_string(k) + " index (" +
                                   std::to_string(i) + ", " + std::to_string(c) +
                                   ") outside dim " + std::to_string(dim));
    }
    m(i, c) = e[2].get<double>();
    ++k;
  }
  return m;
}

Matrix lti_matrix(const std::vector<double>& h, int dim) {
  Matrix m = Matrix::Zero(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j <= i; ++j)
      if (static_cast<std::size_t>(i - j) < h.size()) m(i, j) = h[i - j];
  return m;
}

}  // namespace

PlantKind parse_plant_kind(const std::string& name) {
  if (name == "random_causal") return PlantKind::kRandomCausal;
  if (name == "periodic") return PlantKind::kPeriodic;
  if (name == "lti_toeplitz") return PlantKind::kLtiToeplitz;
  if (name == "explicit") return PlantKind::kExplicit;
  throw InvalidInputError("unknown plant kind '" + name + "'");
}

std::string to_string(PlantKind kind) {
  switch (kind) {
    case PlantKind::kRandomCausal: return "random_causal";
    case PlantKind::kPeriodic: return "periodic";
    case PlantKind::kLtiToeplitz: return "lti_toeplitz";
    case PlantKind::kExplicit: return "explicit";
  }
  return "?";
}

CausalOperator generate(const PlantSpec& spec) {
  validate_spec(spec);
  if (spec.kind == PlantKind::kExplicit) return CausalOperator(spec.explicit_matrix);

  const int n = spec.dim;
  Matrix m = Matrix::Zero(n, n);
  if (spec.kind == PlantKind::kLtiToeplitz) {
    m = lti_matrix(spec.impulse_response, n);
  } else {
    std::mt19937_64 rng(spec.seed);
    // Periodic entries depend on (i mod q, i - j) and are drawn on first use
    // in row-major order, so period N reproduces random_causal exactly.
    const int q = spec.kind == PlantKind::kPeriodic ? spec.period : n;
    std::map<std::pair<int, int>, double> drawn;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j <= i; ++j) {
        const std::pair<int, int> key{i % q, i - j};
        auto it = drawn.find(key);
        if (it == drawn.end()) it = drawn.emplace(key, truncated_normal(rng)).first;
        m(i, j) = it->second * std::pow(spec.decay, i - j);
      }
    }
  }
  m.diagonal().array() += spec.diagonal_shift;
  return CausalOperator(std::move(m));
}

Matrix generate_symbol(int dim, std::uint64_t seed, double decay) {
  if (dim < 1) throw InvalidInputError("generate_symbol: dim must be >= 1");
  if (!(decay > 0.0 && decay <= 1.0)) {
    throw InvalidInputError("generate_symbol: decay must lie in (0, 1]");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix b(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) b(i, j) = normal(rng) * std::pow(decay, std::abs(i - j));
  return b;
}

MatrixFormat parse_format(const std::string& name) {
  if (name == "csv") return MatrixFormat::kCsv;
  if (name == "json") return MatrixFormat::kJson;
  throw InvalidInputError("unknown matrix format '" + name + "' (expected csv or json)");
}

MatrixFormat format_from_path(const std::string& path) {
  const auto dot = path.rfind('.');
  if (dot != std::string::npos) {
    const std::string ext = path.substr(dot + 1);
    if (ext == "csv") return MatrixFormat::kCsv;
    if (ext == "json") return MatrixFormat::kJson;
  }
  throw InvalidInputError("cannot infer matrix format from '" + path + "' (use .csv or .json)");
}

std::string serialize_matrix(const Matrix& m, MatrixFormat format) {
  if (m.rows() != m.cols() || m.rows() < 1) {
    throw DimensionMismatchError("serialize_matrix: matrix must be square and nonempty");
  }
  require_finite(m, "serialize_matrix");
  const Eigen::Index n = m.rows();
  if (format == MatrixFormat::kCsv) {
    std::string out = kCsvHeader + std::to_string(n) + "\n";
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j > 0) out += ',';
        out += format_double(m(i, j));
      }
      out += '\n';
    }
    return out;
  }
  nlohmann::json entries = nlohmann::json::array();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      // Negative zero is listed so the round trip stays bit-exact.
      if (m(i, j) != 0.0 || std::signbit(m(i, j))) entries.push_back({i, j, m(i, j)});
    }
  }
  nlohmann::json j = {{"dim", n}, {"entries", entries}};
  return j.dump() + "\n";
}

Matrix parse_matrix(const std::string& text, MatrixFormat format) {
  return format == MatrixFormat::kCsv ? parse_csv(text) : parse_json(text);
}

Matrix load_matrix(const std::string& path, MatrixFormat format) {
  const std::string text = read_file(path);
  try {
    return parse_matrix(text, format);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what(), e.line(), e.column());
  } catch (const DimensionMismatchError& e) {
    throw DimensionMismatchError(path + ": " + e.what());
  }
}

Matrix load_matrix(const std::string& path) { return load_matrix(path, format_from_path(path)); }

CausalOperator load_operator(const std::string& path, MatrixFormat format) {
  Matrix m = load_matrix(path, format);
  try {
    return CausalOperator(std::move(m));
  } catch (const CausalityViolationError& e) {
    throw CausalityViolationError(path + ": " + e.what(), e.entries());
  }
}

CausalOperator load_operator(const std::string& path) {
  return load_operator(path, format_from_path(path));
}

void save_operator(const Matrix& m, const std::string& path, MatrixFormat format) {
  const std::string text = serialize_matrix(m, format);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw IoError("write to '" + path + "' failed");
}

void save_operator(const CausalOperator& m, const std::string& path, MatrixFormat format) {
  save_operator(m.matrix(), path, format);
}

namespace {

Matrix closed_loop(const CausalOperator& t1, const CausalOperator& t2, const CausalOperator& t3,
                   const CausalOperator& q) {
  const int n = t1.dim();
  if (t2.dim() != n || t3.dim() != n || q.dim() != n) {
    throw DimensionMismatchError("closed loop: T1, T2, T3, Q must share one dimension");
  }
  return t1.matrix() - t2.matrix() * q.matrix() * t3.matrix();
}

}  // namespace

SimulationResult simulate_closed_loop(const CausalOperator& t1, const CausalOperator& t2,
                                      const CausalOperator& t3, const CausalOperator& q,
                                      const Vector& w) {
  const Matrix tzw = closed_loop(t1, t2, t3, q);
  if (w.size() != tzw.cols()) throw DimensionMismatchError("simulate: disturbance length");
  if (!w.allFinite()) throw InvalidInputError("simulate: disturbance has non-finite entries");
  const double wn = w.norm();
  if (wn == 0.0) throw InvalidInputError("simulate: disturbance must be nonzero");
  SimulationResult out;
  out.z = tzw * w;
  out.gain = out.z.norm() / wn;
  return out;
}

WorstCaseDisturbance worst_case_disturbance(const CausalOperator& t1, const CausalOperator& t2,
                                            const CausalOperator& t3, const CausalOperator& q) {
  const Matrix tzw = closed_loop(t1, t2, t3, q);
  WorstCaseDisturbance out;
  Eigen::JacobiSVD<Matrix> svd(tzw, Eigen::ComputeThinV);
  if (svd.singularValues()(0) == 0.0) {
    out.w = Vector::Unit(tzw.cols(), 0);
    out.degenerate = true;
    return out;
  }
  out.w = svd.matrixV().col(0);
  Eigen::Index k = 0;
  out.w.cwiseAbs().maxCoeff(&k);
  if (out.w(k) < 0) out.w = -out.w;
  return out;
}

}  // namespace tvsyn
