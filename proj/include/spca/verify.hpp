#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spca/types.hpp"

namespace spca {

// Outcome of one randomized equivalence suite against a brute-force or
// bisection oracle.
struct VerifySuite {
  std::string name;  // "l0", "l1", "nonneg"
  int cases = 0;
  int failures = 0;
  double max_objective_gap = 0.0;
  double elapsed_seconds = 0.0;
  std::string first_failure;  // empty when all cases pass

  bool passed() const { return failures == 0; }
};

// Runs the three suites on seeded random inputs with dimensions in
// [2, dim_max]. Tolerances are pinned inside: objective gaps 1e-10 (l0) and
// 1e-6 (l1, nonneg), unit norm to 1e-10, and for binding l1 budgets
// ||v||_1 within 1e-8 of t. Deterministic for fixed arguments.
std::vector<VerifySuite> run_verification(int cases, Index dim_max, std::uint64_t seed);

}  // namespace spca
