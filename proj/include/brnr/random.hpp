#pragma once

// Seeded generators for randomized checks: vectors, invertible matrices,
// subspaces and presentations.

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "brnr/fflin.hpp"
#include "brnr/groupspec.hpp"

namespace brnr {

using Rng = std::mt19937_64;

inline Scalar random_scalar(const PrimeField& f, Rng& rng) { return static_cast<Scalar>(rng() % f.p()); }

inline Vec random_vector(const PrimeField& f, std::size_t n, Rng& rng) {
  Vec v(n);
  for (Scalar& x : v) x = random_scalar(f, rng);
  return v;
}

inline Matrix random_matrix(const PrimeField& f, std::size_t rows, std::size_t cols, Rng& rng) {
  Matrix m(f, rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = random_scalar(f, rng);
  return m;
}

/// Uniform over GL_n(F_p) by rejection.
inline Matrix random_invertible(const PrimeField& f, std::size_t n, Rng& rng) {
  while (true) {
    Matrix m = random_matrix(f, n, n, rng);
    if (rank(m) == n) return m;
  }
}

/// Span of `count` random vectors (its dimension may be smaller).
inline Subspace random_subspace(const PrimeField& f, std::size_t ambient, std::size_t count, Rng& rng) {
  std::vector<Vec> vs;
  for (std::size_t i = 0; i < count; ++i) vs.push_back(random_vector(f, ambient, rng));
  return span(f, vs, ambient);
}

/// A random commutator table with a surjective gamma (rejection sampling);
/// requires m <= C(n, 2).
inline CentralExtensionSpec random_spec(const PrimeField& f, int m, int n, Rng& rng) {
  if (m < 1 || static_cast<std::uint64_t>(m) > binomial(n, 2)) throw DomainError("need 1 <= m <= C(n,2)");
  while (true) {
    Matrix gamma = random_matrix(f, static_cast<std::size_t>(m), binomial(n, 2), rng);
    if (rank(gamma) == static_cast<std::size_t>(m)) return spec_from_gamma(gamma, n, "random");
  }
}

}  // namespace brnr
