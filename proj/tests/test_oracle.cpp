#include <cmath>
#include <initializer_list>

#include "doctest.h"

#include "spca/oracle.hpp"

using namespace spca;

namespace {

Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

}  // namespace

TEST_CASE("l0_brute finds the best support by enumeration") {
  const OracleSolution two = l0_brute(vec({3.0, 1.0, 2.0}), 2.0);
  CHECK(two.objective == doctest::Approx(std::sqrt(13.0)).epsilon(1e-12));
  CHECK(two.v[1] == 0.0);

  const OracleSolution one = l0_brute(vec({3.0, -1.0, 2.0}), 1.0);
  CHECK(one.objective == doctest::Approx(3.0).epsilon(1e-12));

  const OracleSolution zero = l0_brute(vec({0.0, 0.0}), 1.0);
  CHECK(zero.objective == 0.0);
  CHECK(zero.v.size() == 0);

  CHECK_THROWS_AS(l0_brute(Vector::Ones(21), 2.0), InvalidInputError);
  CHECK_THROWS_AS(l0_brute(vec({1.0}), 0.5), InfeasibleBudgetError);
}

TEST_CASE("l1_bisect pins the budget to the boundary") {
  const OracleSolution sol = l1_bisect(vec({3.0, 1.0, 2.0}), 1.2);
  CHECK(sol.v[0] == doctest::Approx(0.9741657387).epsilon(1e-9));
  CHECK(sol.v[1] == 0.0);
  CHECK(sol.v[2] == doctest::Approx(0.2258342613).epsilon(1e-9));
  CHECK(sol.v.lpNorm<1>() == doctest::Approx(1.2).epsilon(1e-9));
  CHECK(sol.objective == doctest::Approx(3.0 * 0.9741657387 + 2.0 * 0.2258342613).epsilon(1e-9));
}

TEST_CASE("l1_bisect returns the scaled input when the budget is slack") {
  const OracleSolution sol = l1_bisect(vec({3.0, -4.0}), 1.5);
  CHECK(sol.v[0] == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(sol.v[1] == doctest::Approx(-0.8).epsilon(1e-12));
  CHECK(sol.objective == doctest::Approx(5.0).epsilon(1e-12));
  CHECK_THROWS_AS(l1_bisect(vec({0.0}), 1.0), InvalidInputError);
}

TEST_CASE("nonneg_brute enumerates interior and boundary candidates") {
  const OracleSolution l1 = nonneg_brute(vec({2.0, 1.0}), {Norm::kL1, 1.2, true});
  CHECK(l1.objective == doctest::Approx(2.1741657387).epsilon(1e-8));
  CHECK(l1.v.minCoeff() >= 0.0);

  const OracleSolution slack = nonneg_brute(vec({2.0, 1.0}), {Norm::kL1, 1.4, true});
  CHECK(slack.objective == doctest::Approx(std::sqrt(5.0)).epsilon(1e-9));

  const OracleSolution l0 = nonneg_brute(vec({1.0, -2.0, 3.0}), {Norm::kL0, 2.0, true});
  CHECK(l0.objective == doctest::Approx(std::sqrt(10.0)).epsilon(1e-12));
  CHECK(l0.v[1] == 0.0);

  CHECK_THROWS_AS(nonneg_brute(vec({-1.0, -2.0}), {Norm::kL1, 1.2, true}), NoPositiveEntryError);
  CHECK_THROWS_AS(nonneg_brute(Vector::Ones(13), {Norm::kL1, 1.2, true}), InvalidInputError);
}

TEST_CASE("objective_direct accumulates squared residuals entrywise") {
  Matrix x(2, 2);
  x << 1, 2, 3, 4;
  Matrix u(2, 1);
  u << 1, 0;
  Matrix v(2, 1);
  v << 1, 1;
  CHECK(objective_direct(x, u, v) == doctest::Approx(26.0).epsilon(1e-12));
  CHECK_THROWS_AS(objective_direct(x, u, Matrix::Ones(3, 1)), DimensionError);
}
