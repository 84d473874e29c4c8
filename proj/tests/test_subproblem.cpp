#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <vector>

#include "doctest.h"

#include "spca/oracle.hpp"
#include "spca/rng.hpp"
#include "spca/subproblem.hpp"

using namespace spca;

namespace {

Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

Vector gaussian_vector(std::uint64_t key, Index d) {
  Vector w(d);
  for (Index i = 0; i < d; ++i) w[i] = rng::gaussian(key, static_cast<std::uint64_t>(i));
  return w;
}

}  // namespace

TEST_CASE("update_score is the matrix-vector product") {
  Matrix e(2, 3);
  e << 1, 2, 3, 4, 5, 6;
  const Vector u = update_score(e, vec({1.0, 0.0, -1.0}));
  CHECK(u[0] == doctest::Approx(-2.0));
  CHECK(u[1] == doctest::Approx(-2.0));
  CHECK_THROWS_AS(update_score(e, vec({1.0, 0.0})), DimensionError);
}

TEST_CASE("solve_l0 keeps the largest magnitudes") {
  const ThresholdSolution sol = solve_l0(vec({3.0, 1.0, 2.0}), 2.7);
  CHECK(sol.support == std::vector<Index>{0, 2});
  CHECK(sol.v[0] == doctest::Approx(3.0 / std::sqrt(13.0)).epsilon(1e-12));
  CHECK(sol.v[1] == 0.0);
  CHECK(sol.v[2] == doctest::Approx(2.0 / std::sqrt(13.0)).epsilon(1e-12));
  CHECK(sol.lambda == doctest::Approx(2.0));
}

TEST_CASE("solve_l0 with a full budget returns the scaled input") {
  const Vector w = vec({3.0, -1.0, 2.0});
  const ThresholdSolution sol = solve_l0(w, 3.0);
  CHECK(sol.support == std::vector<Index>{0, 1, 2});
  for (Index i = 0; i < 3; ++i) {
    CHECK(sol.v[i] == doctest::Approx(w[i] / w.norm()).epsilon(1e-12));
  }
  const ThresholdSolution big = solve_l0(w, 1e6);
  CHECK(big.support.size() == 3);
}

TEST_CASE("solve_l0 resolves ties toward lower indices") {
  const ThresholdSolution one = solve_l0(vec({2.0, -2.0, 1.0}), 1.0);
  CHECK(one.support == std::vector<Index>{0});
  CHECK(one.v[0] == doctest::Approx(1.0));

  const ThresholdSolution two = solve_l0(vec({1.0, 2.0, -2.0, 2.0}), 2.9);
  CHECK(two.support == std::vector<Index>{1, 2});
}

TEST_CASE("solve_l0 drops zero entries from the support") {
  const ThresholdSolution sol = solve_l0(vec({5.0, 0.0, 0.0}), 2.0);
  CHECK(sol.support == std::vector<Index>{0});
  CHECK(sol.v[0] == doctest::Approx(1.0));
}

TEST_CASE("solve_l0 rejects bad inputs") {
  CHECK_THROWS_AS(solve_l0(vec({1.0, 2.0}), 0.9), InfeasibleBudgetError);
  CHECK_THROWS_AS(solve_l0(vec({0.0, 0.0}), 1.0), InvalidInputError);
  CHECK_THROWS_AS(solve_l0(Vector(), 1.0), InvalidInputError);
}

TEST_CASE("solve_l0 matches exhaustive enumeration") {
  for (std::uint64_t c = 0; c < 200; ++c) {
    const std::uint64_t key = rng::split(101, c);
    const Index d = 2 + static_cast<Index>(rng::value(key, 1000) % 9);
    const double t = 1.0 + rng::uniform(rng::split(key, 1), 0) * static_cast<double>(d);
    const Vector w = gaussian_vector(rng::split(key, 2), d);
    const ThresholdSolution sol = solve_l0(w, t);
    const OracleSolution ref = l0_brute(w, t);
    CAPTURE(c);
    CHECK(std::abs(sol.v.norm() - 1.0) <= 1e-12);
    CHECK(ref.objective - w.dot(sol.v) <= 1e-10);
    CHECK(static_cast<double>(sol.support.size()) <= std::floor(t));
  }
}

TEST_CASE("solve_l1 matches the closed-form threshold") {
  const ThresholdSolution sol = solve_l1(vec({3.0, 1.0, 2.0}), 1.2);
  CHECK(sol.lambda == doctest::Approx(1.6982162742627268).epsilon(1e-9));
  CHECK(sol.v[0] == doctest::Approx(0.9741657387).epsilon(1e-9));
  CHECK(sol.v[1] == 0.0);
  CHECK(sol.v[2] == doctest::Approx(0.2258342613).epsilon(1e-9));
  CHECK(sol.support == std::vector<Index>{0, 2});
  CHECK(sol.v.lpNorm<1>() == doctest::Approx(1.2).epsilon(1e-10));
  CHECK(sol.v.norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("solve_l1 at t = 1 collapses to one coordinate") {
  const ThresholdSolution sol = solve_l1(vec({3.0, 1.0, 2.0}), 1.0);
  CHECK(sol.support == std::vector<Index>{0});
  CHECK(sol.v[0] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("solve_l1 leaves a slack budget untouched") {
  // ||w||_1/||w||_2 = 1.4, so any t above that keeps v proportional to w.
  const ThresholdSolution sol = solve_l1(vec({3.0, 4.0}), 1.405);
  CHECK(sol.lambda == 0.0);
  CHECK(sol.v[0] == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(sol.v[1] == doctest::Approx(0.8).epsilon(1e-12));

  const ThresholdSolution full = solve_l1(vec({1.0, -1.0, 1.0, 1.0}), 2.0);
  CHECK(full.lambda == 0.0);
  CHECK(full.v[1] == doctest::Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("solve_l1 keeps input signs") {
  const ThresholdSolution sol = solve_l1(vec({-3.0, 1.0, 2.0}), 1.2);
  CHECK(sol.v[0] == doctest::Approx(-0.9741657387).epsilon(1e-9));
  CHECK(sol.v[2] == doctest::Approx(0.2258342613).epsilon(1e-9));
}

TEST_CASE("solve_l1 is scale equivariant in the loading") {
  const Vector w = vec({0.3, -2.1, 1.4, 0.2});
  const ThresholdSolution a = solve_l1(w, 1.5);
  const ThresholdSolution b = solve_l1(7.5 * w, 1.5);
  for (Index i = 0; i < w.size(); ++i) {
    CHECK(a.v[i] == doctest::Approx(b.v[i]).epsilon(1e-12));
  }
  CHECK(b.lambda == doctest::Approx(7.5 * a.lambda).epsilon(1e-10));
}

TEST_CASE("solve_l1 rejects bad inputs") {
  CHECK_THROWS_AS(solve_l1(vec({1.0, 2.0}), 0.99), InfeasibleBudgetError);
  CHECK_THROWS_AS(solve_l1(vec({0.0, 0.0}), 1.2), InvalidInputError);
  CHECK_THROWS_AS(solve_l1(Vector(), 1.2), InvalidInputError);
}

TEST_CASE("solve_l1 survives exact ties") {
  const ThresholdSolution sol = solve_l1(vec({2.0, 2.0, 2.0, 2.0}), 1.5);
  CHECK(sol.v.norm() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(sol.v.lpNorm<1>() <= 1.5 + 1e-3);
  CHECK(sol.v.minCoeff() >= 0.0);
  const ThresholdSolution again = solve_l1(vec({2.0, 2.0, 2.0, 2.0}), 1.5);
  for (Index i = 0; i < 4; ++i) CHECK(sol.v[i] == again.v[i]);
}

TEST_CASE("solve_l1 agrees with bisection across random cases") {
  for (std::uint64_t c = 0; c < 200; ++c) {
    const std::uint64_t key = rng::split(202, c);
    const Index d = 2 + static_cast<Index>(rng::value(key, 1000) % 11);
    const double root_d = std::sqrt(static_cast<double>(d));
    const double t = 1.0 + rng::uniform(rng::split(key, 1), 0) * (root_d - 1.0);
    const Vector w = gaussian_vector(rng::split(key, 2), d);
    const ThresholdSolution sol = solve_l1(w, t);
    const OracleSolution ref = l1_bisect(w, t);
    CAPTURE(c);
    CHECK(std::abs(sol.v.norm() - 1.0) <= 1e-12);
    CHECK(ref.objective - w.dot(sol.v) <= 1e-9);
    for (Index i = 0; i < d; ++i) CHECK(sol.v[i] * w[i] >= 0.0);
    const double h0 = w.lpNorm<1>() / w.norm();
    if (h0 > t + 1e-9) {
      CHECK(sol.v.lpNorm<1>() == doctest::Approx(t).epsilon(1e-8));
    } else if (h0 < t - 1e-9) {
      CHECK(sol.lambda == 0.0);
    }
  }
}

TEST_CASE("h_norm is nonincreasing and fails once everything vanishes") {
  const Vector w = vec({3.0, -1.0, 2.0});
  CHECK(h_norm(w, 0.0) == doctest::Approx(6.0 / std::sqrt(14.0)).epsilon(1e-12));
  double last = h_norm(w, 0.0);
  for (double lambda = 0.1; lambda < 2.9; lambda += 0.1) {
    const double h = h_norm(w, lambda);
    CHECK(h <= last + 1e-12);
    last = h;
  }
  CHECK(h_norm(w, 2.5) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(h_norm(w, 3.0), VanishedSoftThresholdError);
  CHECK_THROWS_AS(h_norm(w, -0.5), InvalidInputError);
}

TEST_CASE("solve_nonneg clips negatives before thresholding") {
  const ThresholdSolution sol = solve_nonneg(vec({1.0, -2.0, 3.0}), {Norm::kL0, 2.0, true});
  CHECK(sol.support == std::vector<Index>{0, 2});
  CHECK(sol.v[0] == doctest::Approx(1.0 / std::sqrt(10.0)).epsilon(1e-12));
  CHECK(sol.v[2] == doctest::Approx(3.0 / std::sqrt(10.0)).epsilon(1e-12));
  CHECK_THROWS_AS(solve_nonneg(vec({-1.0, -2.0}), {Norm::kL0, 1.0, true}), NoPositiveEntryError);
}

TEST_CASE("solve_nonneg agrees with enumeration across random cases") {
  for (std::uint64_t c = 0; c < 200; ++c) {
    const std::uint64_t key = rng::split(303, c);
    const Index d = 2 + static_cast<Index>(rng::value(key, 1000) % 9);
    const bool use_l0 = (rng::value(key, 1001) & 1) == 1;
    const double root_d = std::sqrt(static_cast<double>(d));
    const double span = use_l0 ? static_cast<double>(d) - 1.0 : root_d - 1.0;
    const double t = 1.0 + rng::uniform(rng::split(key, 1), 0) * span;
    Vector w = gaussian_vector(rng::split(key, 2), d);
    if (w.maxCoeff() <= 0.0) w = -w;
    const SparsityBudget budget{use_l0 ? Norm::kL0 : Norm::kL1, t, true};
    const ThresholdSolution sol = solve_nonneg(w, budget);
    const OracleSolution ref = nonneg_brute(w, budget);
    CAPTURE(c);
    CHECK(sol.v.minCoeff() >= 0.0);
    CHECK(std::abs(sol.v.norm() - 1.0) <= 1e-12);
    CHECK(ref.objective - w.dot(sol.v) <= 1e-6);
  }
}

TEST_CASE("solve_subproblem dispatches on the budget") {
  const Vector w = vec({1.0, -2.0, 3.0});
  CHECK(solve_subproblem(w, {Norm::kL0, 2.0, false}).support == std::vector<Index>{1, 2});
  CHECK(solve_subproblem(w, {Norm::kL0, 2.0, true}).support == std::vector<Index>{0, 2});
  const ThresholdSolution l1 = solve_subproblem(w, {Norm::kL1, 1.2, false});
  CHECK(l1.v[2] > 0.0);
  CHECK(l1.v[1] < 0.0);
}
