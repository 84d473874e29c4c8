#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "doctest.h"

#include "spca/types.hpp"

using namespace spca;

TEST_CASE("center_columns removes column means") {
  Matrix raw(3, 2);
  raw << 1, 10, 2, 20, 6, 30;
  const DataMatrix x = center_columns(raw);
  CHECK(x.n() == 3);
  CHECK(x.d() == 2);
  CHECK(x.values.col(0).mean() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(x.values.col(1).mean() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(x.values(2, 0) == doctest::Approx(3.0));
  CHECK(is_centered(x));
}

TEST_CASE("center_columns names the offending cell") {
  Matrix raw(2, 2);
  raw << 1, 2, std::numeric_limits<double>::quiet_NaN(), 4;
  try {
    center_columns(raw);
    FAIL("expected InvalidInputError");
  } catch (const InvalidInputError& err) {
    const std::string msg = err.what();
    CHECK(msg.find("row 2") != std::string::npos);
    CHECK(msg.find("column 1") != std::string::npos);
  }
  CHECK_THROWS_AS(center_columns(Matrix(0, 0)), InvalidInputError);
}

TEST_CASE("is_centered detects an uncentered column") {
  DataMatrix x;
  x.values = Matrix(2, 1);
  x.values << 1.0, 2.0;
  CHECK_FALSE(is_centered(x));
}

TEST_CASE("validate_budget enforces feasibility and flags slack budgets") {
  CHECK_THROWS_AS(validate_budget({Norm::kL0, 0.5, false}, 4), InfeasibleBudgetError);
  CHECK_THROWS_AS(validate_budget({Norm::kL1, 0.999, false}, 4), InfeasibleBudgetError);
  CHECK_THROWS_AS(
      validate_budget({Norm::kL1, std::numeric_limits<double>::quiet_NaN(), false}, 4),
      InfeasibleBudgetError);

  CHECK_FALSE(validate_budget({Norm::kL0, 3.0, false}, 4).unconstrained_equivalent);
  CHECK(validate_budget({Norm::kL0, 4.0, false}, 4).unconstrained_equivalent);
  CHECK(validate_budget({Norm::kL0, 9.5, false}, 4).unconstrained_equivalent);

  CHECK_FALSE(validate_budget({Norm::kL1, 1.9, false}, 4).unconstrained_equivalent);
  CHECK(validate_budget({Norm::kL1, 2.0, false}, 4).unconstrained_equivalent);
}

TEST_CASE("validate_config rejects degenerate settings") {
  SolverConfig cfg;
  CHECK_NOTHROW(validate_config(cfg));
  cfg.tol = 0.0;
  CHECK_THROWS_AS(validate_config(cfg), InvalidInputError);
  cfg.tol = 1e-6;
  cfg.max_sweeps = 0;
  CHECK_THROWS_AS(validate_config(cfg), InvalidInputError);
  cfg.max_sweeps = 10;
  cfg.refresh_period = 0;
  CHECK_THROWS_AS(validate_config(cfg), InvalidInputError);
}

TEST_CASE("audit_factors checks norms, budgets, and signs") {
  FactorPair f;
  f.scores = Matrix::Zero(4, 2);
  f.loadings = Matrix::Zero(3, 2);
  f.loadings.col(0) << 1.0, 0.0, 0.0;
  f.loadings.col(1) << 0.0, 0.6, 0.8;

  std::vector<SparsityBudget> budgets{{Norm::kL0, 1.0, false}, {Norm::kL1, 1.5, false}};
  std::string why;
  CHECK(audit_factors(f, budgets, &why));

  SUBCASE("component count mismatch") {
    budgets.pop_back();
    CHECK_FALSE(audit_factors(f, budgets, &why));
  }
  SUBCASE("unit norm violation") {
    f.loadings(0, 0) = 1.1;
    CHECK_FALSE(audit_factors(f, budgets, &why));
    CHECK(why.find("unit norm") != std::string::npos);
  }
  SUBCASE("cardinality violation") {
    budgets[1] = {Norm::kL0, 1.0, false};
    CHECK_FALSE(audit_factors(f, budgets, &why));
    CHECK(why.find("cardinality") != std::string::npos);
  }
  SUBCASE("l1 violation") {
    budgets[1].t = 1.3;
    CHECK_FALSE(audit_factors(f, budgets, &why));
    CHECK(why.find("L1") != std::string::npos);
  }
  SUBCASE("sign violation") {
    budgets[1].nonnegative = true;
    f.loadings.col(1) << 0.0, -0.6, 0.8;
    CHECK_FALSE(audit_factors(f, budgets, &why));
    CHECK(why.find("negative") != std::string::npos);
  }
}
