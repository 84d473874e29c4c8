#pragma once

#include <optional>
#include <vector>

#include "spca/types.hpp"

namespace spca {

// Cached X - U V^T. Sweeps apply rank-one corrections; a periodic full
// recompute bounds float drift (see refresh_residual).
struct Residual {
  Matrix r;
  int sweeps_since_refresh = 0;
};

// Rank-r SVD factors: loadings are the leading right singular vectors and
// scores carry the singular values. Each loading's largest-magnitude entry is
// made positive (the paired score column is flipped with it). A zero matrix
// yields coordinate-basis loadings and zero scores.
FactorPair initialize(const DataMatrix& x, Index r, const SolverConfig& cfg);

Residual make_residual(const DataMatrix& x, const FactorPair& factors);
void refresh_residual(const DataMatrix& x, const FactorPair& factors, Residual& res);

// One pass of column updates in ascending order. Returns the largest change
// across columns: ||v_new - v_old||_2 for kLoadingChange, or
// ||u_new - u_old||_2 / (1 + ||u_old||_2) for kScoreChange. The objective
// never increases across a sweep (up to float noise).
double sweep(const DataMatrix& x, FactorPair& state, Residual& res,
             const std::vector<SparsityBudget>& budgets, StopMetric metric);

struct FitResult {
  FactorPair factors;
  SolverReport report;
};

// Runs sweeps until the change measure drops below cfg.tol or cfg.max_sweeps
// is hit. Pass warm-start factors together with InitMode::kProvidedFactors;
// they need the right shapes but not budget feasibility.
FitResult fit(const DataMatrix& x, Index r, const std::vector<SparsityBudget>& budgets,
              const SolverConfig& cfg,
              const std::optional<FactorPair>& warm_start = std::nullopt);

}  // namespace spca
