#include "spca/solver.hpp"

#include <Eigen/SVD>

#include <chrono>
#include <cmath>
#include <utility>

#include "spca/subproblem.hpp"

namespace spca {
namespace {

// Makes the largest-magnitude entry of every loading positive; the paired
// score column flips with it so U V^T is unchanged.
void fix_signs(FactorPair& f) {
  for (Index j = 0; j < f.components(); ++j) {
    Index arg = 0;
    f.loadings.col(j).cwiseAbs().maxCoeff(&arg);
    if (f.loadings(arg, j) < 0.0) {
      f.loadings.col(j) = -f.loadings.col(j);
      f.scores.col(j) = -f.scores.col(j);
    }
  }
}

void check_factor_shapes(const DataMatrix& x, const FactorPair& f, Index r) {
  if (f.scores.rows() != x.n() || f.scores.cols() != r || f.loadings.rows() != x.d() ||
      f.loadings.cols() != r) {
    throw DimensionError("fit: warm-start factor shapes do not match the data");
  }
  if (!f.scores.allFinite() || !f.loadings.allFinite()) {
    throw InvalidInputError("fit: warm-start factors must be finite");
  }
}

}  // namespace

FactorPair initialize(const DataMatrix& x, Index r, const SolverConfig& cfg) {
  (void)cfg;
  if (r < 1 || r > std::min(x.n(), x.d())) {
    throw InvalidInputError("initialize: r must lie in [1, min(n, d)]");
  }
  FactorPair f;
  if (x.values.isZero(0.0)) {
    f.scores = Matrix::Zero(x.n(), r);
    f.loadings = Matrix::Zero(x.d(), r);
    for (Index j = 0; j < r; ++j) f.loadings(j, j) = 1.0;
    return f;
  }
  Eigen::BDCSVD<Matrix> svd(x.values, Eigen::ComputeThinU | Eigen::ComputeThinV);
  f.loadings = svd.matrixV().leftCols(r);
  f.scores = svd.matrixU().leftCols(r) * svd.singularValues().head(r).asDiagonal();
  fix_signs(f);
  return f;
}

Residual make_residual(const DataMatrix& x, const FactorPair& factors) {
  Residual res;
  res.r = x.values - factors.scores * factors.loadings.transpose();
  return res;
}

void refresh_residual(const DataMatrix& x, const FactorPair& factors, Residual& res) {
  res.r = x.values - factors.scores * factors.loadings.transpose();
  res.sweeps_since_refresh = 0;
}

double sweep(const DataMatrix& x, FactorPair& state, Residual& res,
             const std::vector<SparsityBudget>& budgets, StopMetric metric) {
  const Index r = state.components();
  if (static_cast<Index>(budgets.size()) != r) {
    throw InvalidInputError("sweep: budgets size must equal the component count");
  }
  if (res.r.rows() != x.n() || res.r.cols() != x.d() || state.scores.rows() != x.n() ||
      state.loadings.rows() != x.d()) {
    throw DimensionError("sweep: state shapes do not match the data");
  }

  double max_change = 0.0;
  for (Index i = 0; i < r; ++i) {
    const Vector u_old = state.scores.col(i);
    const Vector v_old = state.loadings.col(i);

    // E = R + u v^T is never formed; w = E^T u and u_new = E v_new expand to
    // residual products plus rank-one terms.
    Vector w = res.r.transpose() * u_old + v_old * u_old.squaredNorm();

    const SparsityBudget& budget = budgets[static_cast<std::size_t>(i)];
    const bool no_signal =
        budget.nonnegative ? w.maxCoeff() <= 0.0 : w.isZero(0.0);
    // With no admissible direction the loading is kept and only the score is
    // refit, which cannot increase the objective.
    const Vector v_new = no_signal ? v_old : solve_subproblem(w, budget).v;
    const Vector u_new = res.r * v_new + u_old * v_old.dot(v_new);

    if (metric == StopMetric::kLoadingChange) {
      max_change = std::max(max_change, (v_new - v_old).norm());
    } else {
      max_change = std::max(max_change, (u_new - u_old).norm() / (1.0 + u_old.norm()));
    }

    res.r.noalias() += u_old * v_old.transpose();
    res.r.noalias() -= u_new * v_new.transpose();
    state.scores.col(i) = u_new;
    state.loadings.col(i) = v_new;
  }
  return max_change;
}

FitResult fit(const DataMatrix& x, Index r, const std::vector<SparsityBudget>& budgets,
              const SolverConfig& cfg, const std::optional<FactorPair>& warm_start) {
  const auto started = std::chrono::steady_clock::now();
  validate_config(cfg);
  if (static_cast<Index>(budgets.size()) != r) {
    throw InvalidInputError("fit: budgets size must equal r");
  }
  for (const SparsityBudget& b : budgets) validate_budget(b, x.d());

  FactorPair state;
  if (cfg.init == InitMode::kProvidedFactors) {
    if (!warm_start) {
      throw InvalidInputError("fit: provided-factors init needs warm-start factors");
    }
    check_factor_shapes(x, *warm_start, r);
    state = *warm_start;
  } else {
    if (warm_start) {
      throw InvalidInputError("fit: warm-start factors passed under SVD init");
    }
    state = initialize(x, r, cfg);
  }

  Residual res = make_residual(x, state);
  SolverReport report;
  for (int s = 1; s <= cfg.max_sweeps; ++s) {
    const double change = sweep(x, state, res, budgets, cfg.stop_metric);
    if (++res.sweeps_since_refresh >= cfg.refresh_period) {
      refresh_residual(x, state, res);
    }
    report.objectives.push_back(res.r.squaredNorm());
    report.sweeps_run = s;
    if (change < cfg.tol) {
      report.termination = Termination::kConverged;
      break;
    }
  }
  fix_signs(state);
  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return {std::move(state), std::move(report)};
}

}  // namespace spca
