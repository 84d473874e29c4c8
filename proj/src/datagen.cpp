#include "spca/datagen.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <sstream>

#include "spca/rng.hpp"

namespace spca {
namespace {

Vector unit(std::initializer_list<double> xs) {
  Vector v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (double x : xs) v[i++] = x;
  return v / v.norm();
}

void check_orthonormal(const std::vector<Vector>& vectors, Index d, const char* who) {
  for (std::size_t a = 0; a < vectors.size(); ++a) {
    if (vectors[a].size() != d) {
      throw InvalidInputError(std::string(who) + ": fixed vector has wrong length");
    }
    if (std::abs(vectors[a].norm() - 1.0) > 1e-10) {
      throw InvalidInputError(std::string(who) + ": fixed vector is not unit norm");
    }
    for (std::size_t b = 0; b < a; ++b) {
      if (std::abs(vectors[a].dot(vectors[b])) > 1e-10) {
        throw InvalidInputError(std::string(who) + ": fixed vectors are not orthogonal");
      }
    }
  }
}

}  // namespace

HastieSample gen_hastie(Index n, std::uint64_t seed) {
  if (n < 2) throw InvalidInputError("gen_hastie: n must be >= 2");

  const std::uint64_t k1 = rng::split(seed, 0);
  const std::uint64_t k2 = rng::split(seed, 1);
  const std::uint64_t k3 = rng::split(seed, 2);
  std::uint64_t noise_keys[10];
  for (std::uint64_t j = 0; j < 10; ++j) noise_keys[j] = rng::split(seed, 3 + j);

  Matrix raw(n, 10);
  for (Index i = 0; i < n; ++i) {
    const auto idx = static_cast<std::uint64_t>(i);
    const double f1 = std::sqrt(290.0) * rng::gaussian(k1, idx);
    const double f2 = std::sqrt(300.0) * rng::gaussian(k2, idx);
    const double f3 = 0.3 * f1 + 0.925 * f2 + rng::gaussian(k3, idx);
    for (Index j = 0; j < 10; ++j) {
      const double base = j < 4 ? f1 : (j < 8 ? f2 : f3);
      raw(i, j) = base + rng::gaussian(noise_keys[j], idx);
    }
  }

  HastieSample out;
  out.x = center_columns(raw);
  out.truth_supports[0] = {4, 5, 6, 7};
  out.truth_supports[1] = {0, 1, 2, 3};
  return out;
}

Matrix complete_basis(Index d, const std::vector<Vector>& fixed, std::uint64_t seed) {
  if (d < 1) throw InvalidInputError("complete_basis: d must be >= 1");
  if (static_cast<Index>(fixed.size()) > d) {
    throw InvalidInputError("complete_basis: more fixed vectors than dimensions");
  }
  check_orthonormal(fixed, d, "complete_basis");

  Matrix q(d, d);
  Index filled = 0;
  for (const Vector& f : fixed) q.col(filled++) = f;

  std::uint64_t draw = 0;
  while (filled < d) {
    Vector candidate(d);
    const std::uint64_t key = rng::split(seed, draw++);
    for (Index i = 0; i < d; ++i) {
      candidate[i] = rng::gaussian(key, static_cast<std::uint64_t>(i));
    }
    // Two Gram-Schmidt passes keep the basis orthogonal to working precision.
    for (int pass = 0; pass < 2; ++pass) {
      for (Index j = 0; j < filled; ++j) {
        candidate -= q.col(j).dot(candidate) * q.col(j);
      }
    }
    const double norm = candidate.norm();
    if (norm < 1e-8) continue;  // degenerate draw, try the next key
    q.col(filled++) = candidate / norm;
  }
  return q;
}

ToySpec toy_spec_signed() {
  ToySpec spec;
  spec.eigenvalues = {250, 240, 50, 50, 6, 5, 4, 3, 2, 1};
  spec.fixed_vectors.emplace_back(
      0, unit({0.422, 0.422, 0.422, 0.422, 0, 0, 0, 0, 0.380, 0.380}));
  spec.fixed_vectors.emplace_back(
      1, unit({0, 0, 0, 0, 0.489, 0.489, 0.489, 0.489, -0.147, 0.147}));
  return spec;
}

ToySpec toy_spec_nonneg() {
  ToySpec spec;
  spec.eigenvalues = {210, 190, 50, 50, 6, 5, 4, 3, 2, 1};
  spec.fixed_vectors.emplace_back(
      0, unit({0.474, 0, 0.158, 0, 0.316, 0, 0.791, 0, 0.158, 0}));
  spec.fixed_vectors.emplace_back(
      1, unit({0, 0.140, 0, 0.840, 0, 0.280, 0, 0.140, 0, 0.420}));
  return spec;
}

DataMatrix sample_gaussian(const ToySpec& spec, Index n, std::uint64_t seed) {
  const Index d = static_cast<Index>(spec.eigenvalues.size());
  if (d < 1) throw InvalidInputError("sample_gaussian: spec has no eigenvalues");
  if (n < 2) throw InvalidInputError("sample_gaussian: n must be >= 2");
  for (double c : spec.eigenvalues) {
    if (!(c > 0.0)) throw InvalidInputError("sample_gaussian: eigenvalues must be positive");
  }

  std::vector<Vector> fixed;
  std::vector<bool> taken(static_cast<std::size_t>(d), false);
  for (const auto& [slot, vector] : spec.fixed_vectors) {
    if (slot < 0 || slot >= d || taken[static_cast<std::size_t>(slot)]) {
      throw InvalidInputError("sample_gaussian: bad fixed-vector slot");
    }
    taken[static_cast<std::size_t>(slot)] = true;
    fixed.push_back(vector);
  }
  const Matrix completion = complete_basis(d, fixed, spec.seed);

  // Arrange columns so every eigenvalue slot gets its pinned vector, with the
  // random completion filling the free slots in order.
  Matrix q(d, d);
  Index next_free = static_cast<Index>(fixed.size());
  std::size_t fixed_pos = 0;
  for (Index slot = 0; slot < d; ++slot) {
    if (taken[static_cast<std::size_t>(slot)]) {
      q.col(slot) = completion.col(static_cast<Index>(fixed_pos));
      ++fixed_pos;
    } else {
      q.col(slot) = completion.col(next_free++);
    }
  }

  Vector roots(d);
  for (Index j = 0; j < d; ++j) roots[j] = std::sqrt(spec.eigenvalues[static_cast<std::size_t>(j)]);
  const Matrix sigma_root = q * roots.asDiagonal() * q.transpose();

  Matrix z(n, d);
  for (Index j = 0; j < d; ++j) {
    const std::uint64_t key = rng::split(seed, static_cast<std::uint64_t>(j));
    for (Index i = 0; i < n; ++i) z(i, j) = rng::gaussian(key, static_cast<std::uint64_t>(i));
  }
  return center_columns(z * sigma_root);
}

DataMatrix design_from_covariance(const Matrix& sigma, Index n) {
  const Index d = sigma.rows();
  if (d < 1 || sigma.cols() != d) {
    throw InvalidInputError("design_from_covariance: covariance must be square");
  }
  if ((sigma - sigma.transpose()).cwiseAbs().maxCoeff() >
      1e-10 * (sigma.cwiseAbs().maxCoeff() + 1.0)) {
    throw InvalidInputError("design_from_covariance: covariance must be symmetric");
  }
  if (n < d) throw InvalidInputError("design_from_covariance: n must be >= d");

  Eigen::SelfAdjointEigenSolver<Matrix> es(sigma);
  Vector evals = es.eigenvalues();
  for (Index j = 0; j < d; ++j) {
    if (evals[j] < -1e-10) {
      std::ostringstream msg;
      msg << "design_from_covariance: covariance is not PSD (eigenvalue " << evals[j] << ")";
      throw InvalidInputError(msg.str());
    }
    evals[j] = std::sqrt(std::max(evals[j], 0.0));
  }
  const Matrix sigma_root = es.eigenvectors() * evals.asDiagonal() * es.eigenvectors().transpose();

  const double scale = std::sqrt(static_cast<double>(n));
  DataMatrix out;
  if (n == d) {
    out.values = scale * sigma_root;
    return out;
  }
  // Mean-free orthonormal design: column j is the j-th Helmert contrast, so
  // O^T O = I and every column sums to zero.
  Matrix design = Matrix::Zero(n, d);
  for (Index j = 0; j < d; ++j) {
    const double jj = static_cast<double>(j + 1);
    const double denom = std::sqrt(jj * (jj + 1.0));
    for (Index i = 0; i <= j; ++i) design(i, j) = 1.0 / denom;
    design(j + 1, j) = -jj / denom;
  }
  out.values = scale * design * sigma_root;
  return out;
}

}  // namespace spca
