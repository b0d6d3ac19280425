#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tvsyn {

/// Coarse error classes; the CLI maps them onto exit codes.
enum class ErrorKind {
  kInvalidInput,
  kParse,
  kDimensionMismatch,
  kCausalityViolation,
  kNotPositiveDefinite,
  kAssumptionViolation,
  kCompletionInfeasible,
  kUndefinedCertificate,
  kMaxIterations,
  kIdentityViolation,
  kFeedbackIllPosed,
  kMethodDisagreement,
  kIo,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class InvalidInputError : public Error {
 public:
  explicit InvalidInputError(const std::string& what) : Error(ErrorKind::kInvalidInput, what) {}
};

class DimensionMismatchError : public Error {
 public:
  explicit DimensionMismatchError(const std::string& what)
      : Error(ErrorKind::kDimensionMismatch, what) {}
};

/// Parse failure; line and column are 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error(ErrorKind::kParse, what), line_(line), column_(column) {}
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

/// Nonzero entries above the diagonal where a causal operator was required.
/// Offending entries are 1-based (row, column).
class CausalityViolationError : public Error {
 public:
  CausalityViolationError(const std::string& what, std::vector<std::pair<int, int>> entries)
      : Error(ErrorKind::kCausalityViolation, what), entries_(std::move(entries)) {}
  const std::vector<std::pair<int, int>>& entries() const noexcept { return entries_; }

 private:
  std::vector<std::pair<int, int>> entries_;
};

class NotPositiveDefiniteError : public Error {
 public:
  NotPositiveDefiniteError(const std::string& what, double eigenvalue)
      : Error(ErrorKind::kNotPositiveDefinite, what), eigenvalue_(eigenvalue) {}
  double eigenvalue() const noexcept { return eigenvalue_; }

 private:
  double eigenvalue_;
};

/// A modelling assumption failed: "A1", "A3" or "closedness".
class AssumptionViolationError : public Error {
 public:
  AssumptionViolationError(std::string assumption, const std::string& what, double condition)
      : Error(ErrorKind::kAssumptionViolation, what),
        assumption_(std::move(assumption)),
        condition_(condition) {}
  const std::string& assumption() const noexcept { return assumption_; }
  double condition() const noexcept { return condition_; }

 private:
  std::string assumption_;
  double condition_;
};

class CompletionInfeasibleError : public Error {
 public:
  CompletionInfeasibleError(const std::string& what, double achieved)
      : Error(ErrorKind::kCompletionInfeasible, what), achieved_(achieved) {}
  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

class UndefinedCertificateError : public Error {
 public:
  explicit UndefinedCertificateError(const std::string& what)
      : Error(ErrorKind::kUndefinedCertificate, what) {}
};

class MaxIterationsError : public Error {
 public:
  MaxIterationsError(const std::string& what, double best_value, double primal_residual,
                     double dual_residual)
      : Error(ErrorKind::kMaxIterations, what),
        best_value_(best_value),
        primal_residual_(primal_residual),
        dual_residual_(dual_residual) {}
  double best_value() const noexcept { return best_value_; }
  double primal_residual() const noexcept { return primal_residual_; }
  double dual_residual() const noexcept { return dual_residual_; }

 private:
  double best_value_;
  double primal_residual_;
  double dual_residual_;
};

class IdentityViolationError : public Error {
 public:
  IdentityViolationError(const std::string& what, double residual)
      : Error(ErrorKind::kIdentityViolation, what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

class FeedbackIllPosedError : public Error {
 public:
  explicit FeedbackIllPosedError(const std::string& what)
      : Error(ErrorKind::kFeedbackIllPosed, what) {}
};

class MethodDisagreementError : public Error {
 public:
  MethodDisagreementError(const std::string& what, double spread)
      : Error(ErrorKind::kMethodDisagreement, what), spread_(spread) {}
  double spread() const noexcept { return spread_; }

 private:
  double spread_;
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorKind::kIo, what) {}
};

}  // namespace tvsyn
