#include "spca/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <vector>

namespace spca {
namespace {

void check_budget_value(double t, const char* who) {
  if (!(t >= 1.0)) {
    throw InfeasibleBudgetError(std::string(who) + ": budget t must satisfy t >= 1");
  }
}

// L1/L2 ratio of (values - shift) clamped at zero; 0 when nothing survives.
double clamped_ratio(const std::vector<double>& values, double shift) {
  double l1 = 0.0;
  double l2 = 0.0;
  for (double a : values) {
    const double s = a - shift;
    if (s > 0.0) {
      l1 += s;
      l2 += s * s;
    }
  }
  return l2 > 0.0 ? l1 / std::sqrt(l2) : 0.0;
}

}  // namespace

OracleSolution l0_brute(const Vector& w, double t) {
  const Index d = w.size();
  if (d < 1) throw InvalidInputError("l0_brute: empty input");
  if (d > 20) throw InvalidInputError("l0_brute: supports d <= 20 only");
  check_budget_value(t, "l0_brute");
  const double kf = std::floor(t);
  const int k = kf >= static_cast<double>(d) ? static_cast<int>(d) : static_cast<int>(kf);

  unsigned best_mask = 0;
  double best_ss = 0.0;
  const unsigned top = 1u << d;
  for (unsigned mask = 1; mask < top; ++mask) {
    if (std::popcount(mask) > k) continue;
    double ss = 0.0;
    for (Index i = 0; i < d; ++i) {
      if (mask & (1u << i)) ss += w[i] * w[i];
    }
    if (ss > best_ss) {
      best_ss = ss;
      best_mask = mask;
    }
  }
  // Zero input: value 0 with an empty v marking the undefined direction.
  if (best_ss == 0.0) return OracleSolution{Vector(), 0.0};

  OracleSolution out;
  out.v = Vector::Zero(d);
  const double norm = std::sqrt(best_ss);
  for (Index i = 0; i < d; ++i) {
    if (best_mask & (1u << i)) out.v[i] = w[i] / norm;
  }
  out.objective = norm;
  return out;
}

OracleSolution l1_bisect(const Vector& w, double t) {
  const Index d = w.size();
  if (d < 1) throw InvalidInputError("l1_bisect: empty input");
  check_budget_value(t, "l1_bisect");

  std::vector<double> mags(static_cast<std::size_t>(d));
  double l1 = 0.0;
  double l2 = 0.0;
  for (Index i = 0; i < d; ++i) {
    mags[static_cast<std::size_t>(i)] = std::abs(w[i]);
    l1 += mags[static_cast<std::size_t>(i)];
    l2 += w[i] * w[i];
  }
  if (l2 == 0.0) throw InvalidInputError("l1_bisect: zero input");

  OracleSolution out;
  out.v = Vector::Zero(d);

  const double norm0 = std::sqrt(l2);
  if (l1 / norm0 <= t) {
    for (Index i = 0; i < d; ++i) out.v[i] = w[i] / norm0;
    out.objective = norm0;
    return out;
  }

  // Binding case: at the second largest magnitude the ratio is 1 < t, so the
  // root lies in [0, second largest].
  std::vector<double> sorted = mags;
  std::sort(sorted.begin(), sorted.end(), std::greater<double>());
  double lo = 0.0;
  double hi = sorted[1];
  for (int iter = 0; iter < 200 && hi - lo > 1e-13 * std::max(1.0, hi); ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (clamped_ratio(mags, mid) >= t) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double lambda = 0.5 * (lo + hi);

  double ss = 0.0;
  for (Index i = 0; i < d; ++i) {
    const double s = mags[static_cast<std::size_t>(i)] - lambda;
    if (s > 0.0) {
      out.v[i] = w[i] < 0.0 ? -s : s;
      ss += s * s;
    }
  }
  const double norm = std::sqrt(ss);
  double obj = 0.0;
  for (Index i = 0; i < d; ++i) {
    out.v[i] /= norm;
    obj += w[i] * out.v[i];
  }
  out.objective = obj;
  return out;
}

OracleSolution nonneg_brute(const Vector& w, const SparsityBudget& budget) {
  const Index d = w.size();
  if (d < 1) throw InvalidInputError("nonneg_brute: empty input");
  if (d > 12) throw InvalidInputError("nonneg_brute: supports d <= 12 only");
  check_budget_value(budget.t, "nonneg_brute");

  std::vector<Index> positives;
  for (Index i = 0; i < d; ++i) {
    if (w[i] > 0.0) positives.push_back(i);
  }
  if (positives.empty()) {
    throw NoPositiveEntryError("nonneg_brute: input has no positive entry");
  }
  const int p = static_cast<int>(positives.size());

  double best_obj = -std::numeric_limits<double>::infinity();
  Vector best_v;

  const auto consider = [&](const std::vector<Index>& support, const std::vector<double>& coeffs) {
    double ss = 0.0;
    for (double c : coeffs) ss += c * c;
    if (ss <= 0.0) return;
    const double norm = std::sqrt(ss);
    double obj = 0.0;
    for (std::size_t j = 0; j < support.size(); ++j) {
      obj += w[support[j]] * coeffs[j] / norm;
    }
    if (obj > best_obj) {
      best_obj = obj;
      best_v = Vector::Zero(d);
      for (std::size_t j = 0; j < support.size(); ++j) {
        best_v[support[j]] = coeffs[j] / norm;
      }
    }
  };

  const unsigned top = 1u << p;
  if (budget.norm == Norm::kL0) {
    const double kf = std::floor(budget.t);
    const int k = kf >= static_cast<double>(d) ? static_cast<int>(d) : static_cast<int>(kf);
    for (unsigned mask = 1; mask < top; ++mask) {
      if (std::popcount(mask) > k) continue;
      std::vector<Index> support;
      std::vector<double> coeffs;
      for (int j = 0; j < p; ++j) {
        if (mask & (1u << j)) {
          support.push_back(positives[static_cast<std::size_t>(j)]);
          coeffs.push_back(w[positives[static_cast<std::size_t>(j)]]);
        }
      }
      consider(support, coeffs);
    }
  } else {
    for (unsigned mask = 1; mask < top; ++mask) {
      std::vector<Index> support;
      std::vector<double> coeffs;
      for (int j = 0; j < p; ++j) {
        if (mask & (1u << j)) {
          support.push_back(positives[static_cast<std::size_t>(j)]);
          coeffs.push_back(w[positives[static_cast<std::size_t>(j)]]);
        }
      }
      if (clamped_ratio(coeffs, 0.0) <= budget.t) {
        // Interior: the budget is slack for v proportional to the restriction.
        consider(support, coeffs);
        continue;
      }
      // Boundary: shift every coefficient down until the ratio hits t; if the
      // root falls beyond the smallest coefficient a smaller support covers it.
      const double mn = *std::min_element(coeffs.begin(), coeffs.end());
      if (clamped_ratio(coeffs, mn) > budget.t) continue;
      double lo = 0.0;
      double hi = mn;
      for (int iter = 0; iter < 200 && hi - lo > 1e-13 * std::max(1.0, hi); ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (clamped_ratio(coeffs, mid) >= budget.t) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      const double nu = 0.5 * (lo + hi);
      std::vector<double> shifted(coeffs.size());
      for (std::size_t j = 0; j < coeffs.size(); ++j) {
        shifted[j] = std::max(coeffs[j] - nu, 0.0);
      }
      consider(support, shifted);
    }
  }

  OracleSolution out;
  out.v = best_v;
  out.objective = best_obj;
  return out;
}

double objective_direct(const Matrix& x, const Matrix& u, const Matrix& v) {
  if (u.rows() != x.rows() || v.rows() != x.cols() || u.cols() != v.cols()) {
    throw DimensionError("objective_direct: factor shapes do not match the data");
  }
  double total = 0.0;
  for (Index i = 0; i < x.rows(); ++i) {
    for (Index j = 0; j < x.cols(); ++j) {
      double pred = 0.0;
      for (Index k = 0; k < u.cols(); ++k) pred += u(i, k) * v(j, k);
      const double diff = x(i, j) - pred;
      total += diff * diff;
    }
  }
  return total;
}

}  // namespace spca
