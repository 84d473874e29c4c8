#ifndef SPCA_TYPES_HPP
#define SPCA_TYPES_HPP

#include <cstdint>
#include <vector>

#include "spca/common.hpp"

namespace spca {

// Zero-centered observations, one sample per row.
struct DataMatrix {
  Matrix values;

  Index n() const { return values.rows(); }
  Index d() const { return values.cols(); }
};

// Subtracts the column mean from every column. Centering is always explicit;
// no other operation in the library centers data behind the caller's back.
// Throws InvalidInputError naming the first non-finite cell.
DataMatrix center_columns(const Matrix& raw);

// True when every column mean is zero within 1e-9 * (column std + 1).
bool is_centered(const DataMatrix& x);

enum class Norm { kL0, kL1 };

// Per-component sparsity constraint: ||v||_norm <= t, optionally v >= 0.
struct SparsityBudget {
  Norm norm = Norm::kL0;
  double t = 0.0;
  bool nonnegative = false;
};

struct BudgetCheck {
  // Budget is loose enough that the constraint reduces to the plain unit
  // sphere (L0: floor(t) >= d; L1: t >= sqrt(d)).
  bool unconstrained_equivalent = false;
};

// Validates a budget against dimension d. Pure function of (b, d); throws
// InfeasibleBudgetError carrying the violated bound.
BudgetCheck validate_budget(const SparsityBudget& b, Index d);

enum class InitMode { kSvd, kProvidedFactors };

// Stopping rule measures the per-sweep change of loadings (V) by default;
// score (U) change is available as an alternative.
enum class StopMetric { kLoadingChange, kScoreChange };

struct SolverConfig {
  InitMode init = InitMode::kSvd;
  double tol = 1e-6;
  int max_sweeps = 200;
  int refresh_period = 50;
  std::uint64_t seed = 0;
  StopMetric stop_metric = StopMetric::kLoadingChange;
};

void validate_config(const SolverConfig& cfg);

enum class Termination { kConverged, kMaxSweeps };

struct SolverReport {
  // objectives[s] is ||X - U V^T||_F^2 after sweep s+1; the sequence is
  // non-increasing within 1e-9 relative slack.
  std::vector<double> objectives;
  int sweeps_run = 0;
  Termination termination = Termination::kMaxSweeps;
  double elapsed_seconds = 0.0;
};

// Score matrix U (n x r) and loading matrix V (d x r); the solver's state.
struct FactorPair {
  Matrix scores;    // n x r
  Matrix loadings;  // d x r

  Index components() const { return loadings.cols(); }
};

// Standalone audit of the FactorPair invariants: unit-norm loadings and
// per-column budget satisfaction. Used by the property tests.
bool audit_factors(const FactorPair& f, const std::vector<SparsityBudget>& budgets,
                   std::string* violation = nullptr);

}  // namespace spca

#endif  // SPCA_TYPES_HPP
