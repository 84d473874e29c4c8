#include "spca/types.hpp"

#include <cmath>
#include <sstream>

namespace spca {

DataMatrix center_columns(const Matrix& raw) {
  if (raw.rows() < 1 || raw.cols() < 1) {
    throw InvalidInputError("center_columns: matrix must have at least one row and column");
  }
  for (Index j = 0; j < raw.cols(); ++j) {
    for (Index i = 0; i < raw.rows(); ++i) {
      if (!std::isfinite(raw(i, j))) {
        std::ostringstream msg;
        msg << "center_columns: non-finite entry at row " << (i + 1) << ", column " << (j + 1);
        throw InvalidInputError(msg.str());
      }
    }
  }
  DataMatrix out{raw};
  out.values.rowwise() -= raw.colwise().mean();
  return out;
}

bool is_centered(const DataMatrix& x) {
  const double n = static_cast<double>(x.n());
  for (Index j = 0; j < x.d(); ++j) {
    const double mean = x.values.col(j).mean();
    const double var = x.values.col(j).squaredNorm() / n - mean * mean;
    const double sd = std::sqrt(std::max(var, 0.0));
    if (std::abs(mean) > 1e-9 * (sd + 1.0)) return false;
  }
  return true;
}

BudgetCheck validate_budget(const SparsityBudget& b, Index d) {
  if (d < 1) throw InfeasibleBudgetError("validate_budget: dimension must be >= 1");
  if (!std::isfinite(b.t)) throw InfeasibleBudgetError("validate_budget: budget t must be finite");
  if (b.t < 1.0) {
    std::ostringstream msg;
    msg << "infeasible budget: t = " << b.t << " violates t >= 1 (feasible set is empty)";
    throw InfeasibleBudgetError(msg.str());
  }
  BudgetCheck check;
  if (b.norm == Norm::kL0) {
    check.unconstrained_equivalent = std::floor(b.t) >= static_cast<double>(d);
  } else {
    check.unconstrained_equivalent = b.t >= std::sqrt(static_cast<double>(d));
  }
  return check;
}

void validate_config(const SolverConfig& cfg) {
  if (!(cfg.tol > 0.0)) throw InvalidInputError("solver config: tol must be > 0");
  if (cfg.max_sweeps < 1) throw InvalidInputError("solver config: max_sweeps must be >= 1");
  if (cfg.refresh_period < 1) throw InvalidInputError("solver config: refresh_period must be >= 1");
}

bool audit_factors(const FactorPair& f, const std::vector<SparsityBudget>& budgets,
                   std::string* violation) {
  const auto fail = [violation](const std::string& msg) {
    if (violation) *violation = msg;
    return false;
  };
  if (f.scores.cols() != f.loadings.cols()) {
    return fail("scores and loadings disagree on component count");
  }
  if (static_cast<Index>(budgets.size()) != f.components()) {
    return fail("budget list length does not match component count");
  }
  for (Index i = 0; i < f.components(); ++i) {
    const auto v = f.loadings.col(i);
    std::ostringstream at;
    at << "column " << (i + 1) << ": ";
    if (std::abs(v.norm() - 1.0) > 1e-10) return fail(at.str() + "loading is not unit norm");
    const SparsityBudget& b = budgets[static_cast<std::size_t>(i)];
    if (b.norm == Norm::kL0) {
      const Index nnz = (v.array() != 0.0).count();
      if (nnz > static_cast<Index>(std::floor(b.t))) {
        return fail(at.str() + "L0 cardinality exceeds budget");
      }
    } else {
      if (v.lpNorm<1>() > b.t + 1e-8) return fail(at.str() + "L1 norm exceeds budget");
    }
    if (b.nonnegative && v.minCoeff() < 0.0) {
      return fail(at.str() + "negative entry under nonnegativity constraint");
    }
  }
  return true;
}

}  // namespace spca
