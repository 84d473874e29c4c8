#pragma once

#include <vector>

#include "spca/types.hpp"

namespace spca {

// Summary of a fit against the data it was computed on. rre and pev derive
// from the same projection, so rre^2 + pev/100 = 1 within float noise.
struct EvalResult {
  double rre = 0.0;  // in [0, 1]
  double pev = 0.0;  // percent, in [0, 100]
  std::vector<Index> per_component_cardinality;
};

// ||X - Xhat||_F / ||X||_F with Xhat = X V (V^T V)^{-1} V^T. Depends only on
// the column span of V.
double rre(const DataMatrix& x, const Matrix& v);

// Tr(Xhat^T Xhat) / Tr(X^T X) * 100 with the same projection.
double pev(const DataMatrix& x, const Matrix& v);

EvalResult evaluate(const DataMatrix& x, const Matrix& v);

// True iff both loadings match their ground-truth partner with
// |vhat_i^T v_i| >= threshold; both column assignments are tried and the
// better one counts.
bool success_recovery(const Matrix& v_hat, const Matrix& v_true, double threshold = 0.99);

}  // namespace spca
