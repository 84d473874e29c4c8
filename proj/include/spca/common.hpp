#ifndef SPCA_COMMON_HPP
#define SPCA_COMMON_HPP

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace spca {

inline constexpr const char* kVersion = "0.1.0";

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed or non-finite input data.
class InvalidInputError : public Error {
 public:
  using Error::Error;
};

// Sparsity budget outside the feasible range for the given dimension.
class InfeasibleBudgetError : public Error {
 public:
  using Error::Error;
};

// Operand shapes do not agree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// The nonnegative subproblem has no strictly positive entry to work with;
// callers inside the solver handle this with the skip rule.
class NoPositiveEntryError : public Error {
 public:
  using Error::Error;
};

// soft_lambda(w) is identically zero, so the normalized threshold is undefined.
class VanishedSoftThresholdError : public Error {
 public:
  using Error::Error;
};

// Loadings are rank deficient, so the projection X V (V^T V)^{-1} V^T does
// not exist.
class SingularProjectionError : public Error {
 public:
  using Error::Error;
};

// File cannot be read or written, or its contents do not parse; the message
// names the file and, for parse failures, the line and column.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace spca

#endif  // SPCA_COMMON_HPP
