#include "spca/metrics.hpp"

#include <Eigen/LU>

#include <cmath>

namespace spca {
namespace {

// Xhat = X V (V^T V)^{-1} V^T, built as (X V) G^{-1} V^T so the d x d
// projector is never formed.
Matrix project(const DataMatrix& x, const Matrix& v) {
  if (v.rows() != x.d() || v.cols() < 1) {
    throw DimensionError("projection: loadings must be d x r with r >= 1");
  }
  if (x.values.norm() == 0.0) {
    throw InvalidInputError("projection: zero data matrix");
  }
  const Matrix gram = v.transpose() * v;
  Eigen::FullPivLU<Matrix> lu(gram);
  if (!lu.isInvertible()) {
    throw SingularProjectionError("projection: loadings are rank deficient");
  }
  return (x.values * v) * lu.solve(Matrix(v.transpose()));
}

}  // namespace

double rre(const DataMatrix& x, const Matrix& v) {
  const Matrix xhat = project(x, v);
  return (x.values - xhat).norm() / x.values.norm();
}

double pev(const DataMatrix& x, const Matrix& v) {
  const Matrix xhat = project(x, v);
  return xhat.squaredNorm() / x.values.squaredNorm() * 100.0;
}

EvalResult evaluate(const DataMatrix& x, const Matrix& v) {
  const Matrix xhat = project(x, v);
  EvalResult out;
  out.rre = (x.values - xhat).norm() / x.values.norm();
  out.pev = xhat.squaredNorm() / x.values.squaredNorm() * 100.0;
  out.per_component_cardinality.reserve(static_cast<std::size_t>(v.cols()));
  for (Index j = 0; j < v.cols(); ++j) {
    out.per_component_cardinality.push_back((v.col(j).array() != 0.0).count());
  }
  return out;
}

bool success_recovery(const Matrix& v_hat, const Matrix& v_true, double threshold) {
  if (v_hat.rows() != v_true.rows() || v_hat.cols() != 2 || v_true.cols() != 2) {
    throw DimensionError("success_recovery: expects two components per side");
  }
  const auto assignment_ok = [&](Index a, Index b) {
    return std::abs(v_hat.col(a).dot(v_true.col(0))) >= threshold &&
           std::abs(v_hat.col(b).dot(v_true.col(1))) >= threshold;
  };
  return assignment_ok(0, 1) || assignment_ok(1, 0);
}

}  // namespace spca
