#include "spca/subproblem.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace spca {
namespace {

constexpr double kTieEps = 1e-12;

void check_budget_value(double t, const char* who) {
  if (!(t >= 1.0)) {
    throw InfeasibleBudgetError(std::string(who) + ": budget t must satisfy t >= 1");
  }
}

// Magnitudes nudged by a tiny index-dependent factor so equal entries acquire
// a strict order; keeps tie handling deterministic.
Vector perturbed_magnitudes(const Vector& w) {
  Vector m(w.size());
  for (Index i = 0; i < w.size(); ++i) {
    m[i] = std::abs(w[i]) * (1.0 + static_cast<double>(i) * kTieEps);
  }
  return m;
}

// L1/L2 ratio of the soft-thresholded magnitudes; 0 when nothing survives.
double ratio_after_soft(const Vector& m, double lambda) {
  double l1 = 0.0;
  double l2 = 0.0;
  for (Index i = 0; i < m.size(); ++i) {
    const double s = m[i] - lambda;
    if (s > 0.0) {
      l1 += s;
      l2 += s * s;
    }
  }
  return l2 > 0.0 ? l1 / std::sqrt(l2) : 0.0;
}

// The ratio is strictly decreasing between consecutive magnitudes, so plain
// bisection converges; requires ratio(lo) >= t >= ratio(hi).
double bisect_ratio(const Vector& m, double lo, double hi, double t) {
  for (int iter = 0; iter < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (ratio_after_soft(m, mid) >= t) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

ThresholdSolution normalized_solution(const Vector& raw, double lambda) {
  ThresholdSolution out;
  out.lambda = lambda;
  out.v = raw / raw.norm();
  for (Index i = 0; i < out.v.size(); ++i) {
    if (out.v[i] != 0.0) out.support.push_back(i);
  }
  return out;
}

}  // namespace

Vector update_score(const Matrix& e, const Vector& v) {
  if (e.cols() != v.size()) {
    throw DimensionError("update_score: loading length must match matrix width");
  }
  return e * v;
}

double h_norm(const Vector& w, double lambda) {
  if (w.size() < 1) throw InvalidInputError("h_norm: empty input");
  if (!(lambda >= 0.0)) throw InvalidInputError("h_norm: lambda must be >= 0");
  const double r = ratio_after_soft(w.cwiseAbs(), lambda);
  if (r == 0.0) {
    throw VanishedSoftThresholdError("h_norm: soft threshold removed every entry");
  }
  return r;
}

ThresholdSolution solve_l0(const Vector& w, double t) {
  if (w.size() < 1) throw InvalidInputError("solve_l0: empty input");
  check_budget_value(t, "solve_l0");
  const Index d = w.size();
  if (w.cwiseAbs().maxCoeff() == 0.0) throw InvalidInputError("solve_l0: zero input");

  const double kf = std::floor(t);
  const Index k = kf >= static_cast<double>(d) ? d : static_cast<Index>(kf);

  std::vector<Index> order(static_cast<std::size_t>(d));
  std::iota(order.begin(), order.end(), Index{0});
  std::sort(order.begin(), order.end(), [&](Index a, Index b) {
    const double ma = std::abs(w[a]);
    const double mb = std::abs(w[b]);
    return ma != mb ? ma > mb : a < b;  // ties keep the lower index
  });

  Vector raw = Vector::Zero(d);
  for (Index j = 0; j < k; ++j) raw[order[static_cast<std::size_t>(j)]] = w[order[static_cast<std::size_t>(j)]];
  const double theta = std::abs(w[order[static_cast<std::size_t>(k - 1)]]);
  return normalized_solution(raw, theta);
}

ThresholdSolution solve_l1(const Vector& w, double t) {
  if (w.size() < 1) throw InvalidInputError("solve_l1: empty input");
  check_budget_value(t, "solve_l1");
  const Index d = w.size();
  const double wnorm = w.norm();
  if (wnorm == 0.0) throw InvalidInputError("solve_l1: zero input");

  // Slack case: scaling w to unit norm already satisfies the budget.
  if (w.lpNorm<1>() / wnorm <= t) return normalized_solution(w, 0.0);

  const Vector m = perturbed_magnitudes(w);

  std::vector<Index> order(static_cast<std::size_t>(d));
  std::iota(order.begin(), order.end(), Index{0});
  std::sort(order.begin(), order.end(), [&](Index a, Index b) { return m[a] < m[b]; });

  // The ratio evaluated at each magnitude decreases as the magnitude grows;
  // the threshold lives in the first cell whose right edge drops to t or below.
  Index cell = d - 2;
  for (Index j = 0; j + 1 < d; ++j) {
    if (ratio_after_soft(m, m[order[static_cast<std::size_t>(j)]]) <= t) {
      cell = j;
      break;
    }
  }
  const double lo = cell == 0 ? 0.0 : m[order[static_cast<std::size_t>(cell - 1)]];
  const double hi = m[order[static_cast<std::size_t>(cell)]];

  // Entries surviving a threshold inside the cell.
  const Index count = d - cell;
  double s1 = 0.0;
  double s2 = 0.0;
  for (Index j = cell; j < d; ++j) {
    const double a = m[order[static_cast<std::size_t>(j)]];
    s1 += a;
    s2 += a * a;
  }

  double lambda;
  const double excess = static_cast<double>(count) - t * t;
  if (excess <= 1e-12 * static_cast<double>(count)) {
    lambda = bisect_ratio(m, lo, hi, t);
  } else {
    const double inner = std::max(excess * (static_cast<double>(count) * s2 - s1 * s1), 0.0);
    lambda = (s1 * excess - t * std::sqrt(inner)) / (static_cast<double>(count) * excess);
    lambda = std::clamp(lambda, lo, hi);
    if (std::abs(ratio_after_soft(m, lambda) - t) > 1e-10 * std::max(1.0, t)) {
      lambda = bisect_ratio(m, lo, hi, t);
    }
  }

  Vector raw = Vector::Zero(d);
  for (Index i = 0; i < d; ++i) {
    const double s = m[i] - lambda;
    if (s > 0.0) raw[i] = w[i] < 0.0 ? -s : s;
  }
  return normalized_solution(raw, lambda);
}

ThresholdSolution solve_nonneg(const Vector& w, const SparsityBudget& budget) {
  if (w.size() < 1) throw InvalidInputError("solve_nonneg: empty input");
  const Vector wp = w.cwiseMax(0.0);
  if (wp.maxCoeff() <= 0.0) {
    throw NoPositiveEntryError("solve_nonneg: input has no positive entry");
  }
  return budget.norm == Norm::kL0 ? solve_l0(wp, budget.t) : solve_l1(wp, budget.t);
}

ThresholdSolution solve_subproblem(const Vector& w, const SparsityBudget& budget) {
  if (budget.nonnegative) return solve_nonneg(w, budget);
  return budget.norm == Norm::kL0 ? solve_l0(w, budget.t) : solve_l1(w, budget.t);
}

}  // namespace spca
