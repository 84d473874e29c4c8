#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "spca/types.hpp"

namespace spca {

// Covariance model built from eigen-pairs: Sigma = sum_j c_j q_j q_j^T. The
// fixed vectors pin chosen eigenvector slots; the remaining slots are filled
// with a seeded random orthonormal completion.
struct ToySpec {
  std::vector<double> eigenvalues;                  // all positive, length d
  std::vector<std::pair<Index, Vector>> fixed_vectors;  // (slot, unit vector)
  std::uint64_t seed = 0;                           // drives the completion
};

struct HastieSample {
  DataMatrix x;  // n x 10, centered
  std::array<std::vector<Index>, 2> truth_supports;  // 0-based column sets
};

// Three hidden factors drive ten observed variables in two blocks of four
// plus a mixed pair; the planted loadings live on columns {5..8} and {1..4}
// (1-based). Pure function of (n, seed).
HastieSample gen_hastie(Index n, std::uint64_t seed);

// Extends the fixed orthonormal columns to a full orthonormal d x d basis by
// Gram-Schmidt over seeded random draws; redraws when a residual degenerates.
Matrix complete_basis(Index d, const std::vector<Vector>& fixed, std::uint64_t seed);

// Eigen-structures used by the synthetic recovery studies; loadings are the
// published digits rescaled to exact unit norm.
ToySpec toy_spec_signed();
ToySpec toy_spec_nonneg();

// n draws from N(0, Sigma) with Sigma assembled from the spec, then centered.
DataMatrix sample_gaussian(const ToySpec& spec, Index n, std::uint64_t seed);

// Deterministic X with (1/n) X^T X equal to Sigma up to float noise. Built
// as sqrt(n) * O * Sigma^{1/2} with an orthonormal design O; for n > d the
// design is mean-free, for n = d it is the identity.
DataMatrix design_from_covariance(const Matrix& sigma, Index n);

}  // namespace spca
