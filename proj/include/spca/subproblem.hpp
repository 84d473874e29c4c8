#pragma once

#include <vector>

#include "spca/types.hpp"

namespace spca {

// Solution of the single-loading subproblem: maximize w^T v over unit-norm v
// subject to the sparsity budget. For L1 solutions lambda is the soft
// threshold; for L0 it is the magnitude of the smallest kept entry.
struct ThresholdSolution {
  Vector v;
  double lambda = 0.0;
  std::vector<Index> support;  // ascending indices of nonzero entries of v
};

// Optimal score column for a fixed unit-norm loading: u = E v.
Vector update_score(const Matrix& e, const Vector& v);

// ||soft_lambda(w)||_1 / ||soft_lambda(w)||_2. Continuous and nonincreasing
// in lambda on [0, max|w_i|); throws once the soft threshold wipes out w.
double h_norm(const Vector& w, double lambda);

ThresholdSolution solve_l0(const Vector& w, double t);
ThresholdSolution solve_l1(const Vector& w, double t);
ThresholdSolution solve_nonneg(const Vector& w, const SparsityBudget& budget);

// Dispatches on budget.nonnegative and budget.norm.
ThresholdSolution solve_subproblem(const Vector& w, const SparsityBudget& budget);

}  // namespace spca
