#include "spca/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

#include "spca/io.hpp"
#include "spca/oracle.hpp"
#include "spca/rng.hpp"
#include "spca/subproblem.hpp"

namespace spca {

namespace {

constexpr double kGapTolL0 = 1e-10;
constexpr double kGapTolL1 = 1e-6;
constexpr double kGapTolNonneg = 1e-6;
constexpr double kUnitNormTol = 1e-10;
constexpr double kL1WindowTol = 1e-8;

Vector draw_entries(std::uint64_t key, Index d) {
  Vector w(d);
  for (Index i = 0; i < d; ++i) w[i] = rng::gaussian(key, static_cast<std::uint64_t>(i));
  return w;
}

bool has_tied_magnitudes(const Vector& w) {
  std::vector<double> mag(static_cast<std::size_t>(w.size()));
  for (Index i = 0; i < w.size(); ++i) mag[static_cast<std::size_t>(i)] = std::abs(w[i]);
  std::sort(mag.begin(), mag.end());
  for (std::size_t i = 1; i < mag.size(); ++i) {
    if (mag[i] - mag[i - 1] <= 1e-9 * std::max(1.0, mag[i])) return true;
  }
  return false;
}

// Strictly interior point of (1, upper).
double interior_budget(std::uint64_t key, double upper) {
  const double u = rng::uniform(key, 0);
  return 1.0 + (1e-6 + (1.0 - 2e-6) * u) * (upper - 1.0);
}

void record_failure(VerifySuite& suite, int case_index, const std::string& what) {
  ++suite.failures;
  if (suite.first_failure.empty()) {
    suite.first_failure = "case " + std::to_string(case_index) + ": " + what;
  }
}

void check_common(VerifySuite& suite, int c, const Vector& v, double gap, double gap_tol) {
  suite.max_objective_gap = std::max(suite.max_objective_gap, gap);
  if (gap > gap_tol) {
    record_failure(suite, c, "objective gap " + format_double(gap));
  }
  if (std::abs(v.norm() - 1.0) > kUnitNormTol) {
    record_failure(suite, c, "loading norm " + format_double(v.norm()));
  }
}

VerifySuite run_l0(int cases, Index dim_max, std::uint64_t suite_key) {
  VerifySuite suite;
  suite.name = "l0";
  suite.cases = cases;
  const auto start = std::chrono::steady_clock::now();
  for (int c = 0; c < cases; ++c) {
    const std::uint64_t key = rng::split(suite_key, static_cast<std::uint64_t>(c));
    const Index d = 2 + static_cast<Index>(rng::value(key, 0) % static_cast<std::uint64_t>(dim_max - 1));
    const Vector w = draw_entries(rng::split(key, 1), d);
    const double t = 1.0 + rng::uniform(rng::split(key, 2), 0) * static_cast<double>(d - 1);

    const ThresholdSolution sol = solve_l0(w, t);
    const OracleSolution ref = l0_brute(w, t);
    check_common(suite, c, sol.v, std::abs(w.dot(sol.v) - ref.objective), kGapTolL0);
    if (static_cast<double>(sol.support.size()) > std::floor(t)) {
      record_failure(suite, c, "support larger than the budget");
    }
  }
  suite.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return suite;
}

VerifySuite run_l1(int cases, Index dim_max, std::uint64_t suite_key) {
  VerifySuite suite;
  suite.name = "l1";
  suite.cases = cases;
  const auto start = std::chrono::steady_clock::now();
  for (int c = 0; c < cases; ++c) {
    const std::uint64_t key = rng::split(suite_key, static_cast<std::uint64_t>(c));
    const Index d = 2 + static_cast<Index>(rng::value(key, 0) % static_cast<std::uint64_t>(dim_max - 1));
    Vector w = draw_entries(rng::split(key, 1), d);
    for (std::uint64_t attempt = 0; has_tied_magnitudes(w) && attempt < 64; ++attempt) {
      w = draw_entries(rng::split(key, 3 + attempt), d);
    }
    const double t = interior_budget(rng::split(key, 2), std::sqrt(static_cast<double>(d)));

    const ThresholdSolution sol = solve_l1(w, t);
    const OracleSolution ref = l1_bisect(w, t);
    check_common(suite, c, sol.v, std::abs(w.dot(sol.v) - ref.objective), kGapTolL1);

    const double h0 = w.lpNorm<1>() / w.norm();
    if (h0 > t + 1e-9) {
      if (std::abs(sol.v.lpNorm<1>() - t) > kL1WindowTol) {
        record_failure(suite, c, "binding l1 norm " + format_double(sol.v.lpNorm<1>()) +
                                     " vs budget " + format_double(t));
      }
    } else if (h0 < t - 1e-9) {
      if (sol.lambda != 0.0 || (sol.v - w / w.norm()).lpNorm<Eigen::Infinity>() > 1e-12) {
        record_failure(suite, c, "slack budget did not return the normalized input");
      }
    }
  }
  suite.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return suite;
}

VerifySuite run_nonneg(int cases, Index dim_max, std::uint64_t suite_key) {
  VerifySuite suite;
  suite.name = "nonneg";
  suite.cases = cases;
  const Index cap = std::min<Index>(dim_max, 12);  // brute force enumeration limit
  const auto start = std::chrono::steady_clock::now();
  for (int c = 0; c < cases; ++c) {
    const std::uint64_t key = rng::split(suite_key, static_cast<std::uint64_t>(c));
    const Index d = 2 + static_cast<Index>(rng::value(key, 0) % static_cast<std::uint64_t>(cap - 1));
    Vector w = draw_entries(rng::split(key, 1), d);
    for (std::uint64_t attempt = 0; w.maxCoeff() <= 0.0 && attempt < 64; ++attempt) {
      w = draw_entries(rng::split(key, 3 + attempt), d);
    }

    SparsityBudget budget;
    budget.nonnegative = true;
    budget.norm = (c % 2 == 0) ? Norm::kL0 : Norm::kL1;
    budget.t = budget.norm == Norm::kL0
                   ? 1.0 + rng::uniform(rng::split(key, 2), 0) * static_cast<double>(d - 1)
                   : interior_budget(rng::split(key, 2), std::sqrt(static_cast<double>(d)));

    const ThresholdSolution sol = solve_nonneg(w, budget);
    const OracleSolution ref = nonneg_brute(w, budget);
    check_common(suite, c, sol.v, std::abs(w.dot(sol.v) - ref.objective), kGapTolNonneg);
    if (sol.v.minCoeff() < 0.0) {
      record_failure(suite, c, "negative entry " + format_double(sol.v.minCoeff()));
    }
  }
  suite.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return suite;
}

}  // namespace

std::vector<VerifySuite> run_verification(int cases, Index dim_max, std::uint64_t seed) {
  if (cases < 1) throw InvalidInputError("verification needs at least one case");
  if (dim_max < 2) throw InvalidInputError("dim_max must be at least 2");
  std::vector<VerifySuite> out;
  out.push_back(run_l0(cases, dim_max, rng::split(seed, 0)));
  out.push_back(run_l1(cases, dim_max, rng::split(seed, 1)));
  out.push_back(run_nonneg(cases, dim_max, rng::split(seed, 2)));
  return out;
}

}  // namespace spca
