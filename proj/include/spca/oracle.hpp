#pragma once

#include "spca/types.hpp"

namespace spca {

// Reference answers computed along slow, independent routes. The objective is
// w^T v at the returned loading; tests compare it against the fast solvers.
struct OracleSolution {
  Vector v;
  double objective = 0.0;
};

// Exhaustive support enumeration; requires d <= 20. A zero input yields
// objective 0 with an empty v flagging the undefined direction.
OracleSolution l0_brute(const Vector& w, double t);

// Bisection on the L1/L2 ratio of the soft-thresholded vector; assumes the
// nonzero magnitudes of w are distinct.
OracleSolution l1_bisect(const Vector& w, double t);

// Enumerates every support over the positive entries with interior and
// boundary candidates per support; requires d <= 12.
OracleSolution nonneg_brute(const Vector& w, const SparsityBudget& budget);

// ||x - u v^T||_F^2 accumulated entry by entry.
double objective_direct(const Matrix& x, const Matrix& u, const Matrix& v);

}  // namespace spca
