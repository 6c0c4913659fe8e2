#pragma once

// Test-only helpers: random matrices and brute-force reference routines that
// do not go through the library code paths they are used to check.

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "gisin/linalg.hpp"
#include "gisin/states.hpp"

namespace gisin::testing {

inline Complex random_complex(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  return {n(rng), n(rng)};
}

inline Matrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = random_complex(rng);
  return m;
}

inline Matrix random_hermitian(std::size_t n, std::mt19937_64& rng) {
  const Matrix g = random_matrix(n, n, rng);
  return 0.5 * (g + g.adjoint());
}

/// Random density matrix G G^dagger / Tr.
inline Matrix random_density(std::size_t n, std::mt19937_64& rng, std::size_t rank = 0) {
  const Matrix g = random_matrix(n, rank ? rank : n, rng);
  Matrix rho = g * g.adjoint();
  rho *= 1.0 / rho.trace().real();
  return rho;
}

/// Haar-ish unitary by Gram-Schmidt on a complex Gaussian matrix.
inline Matrix random_unitary(std::size_t n, std::mt19937_64& rng) {
  Matrix g = random_matrix(n, n, rng);
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t prev = 0; prev < c; ++prev) {
      Complex dot{};
      for (std::size_t r = 0; r < n; ++r) dot += std::conj(g(r, prev)) * g(r, c);
      for (std::size_t r = 0; r < n; ++r) g(r, c) -= dot * g(r, prev);
    }
    double norm = 0.0;
    for (std::size_t r = 0; r < n; ++r) norm += std::norm(g(r, c));
    norm = std::sqrt(norm);
    for (std::size_t r = 0; r < n; ++r) g(r, c) /= norm;
  }
  return g;
}

/// Naive triple-loop product.
inline Matrix naive_multiply(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      Complex s{};
      for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
      out(i, j) = s;
    }
  return out;
}

/// Reduced purity Tr(rho_A^2) of a bipartite amplitude matrix a (dA x dB),
/// via the singular-value identity Tr((a a^dagger)^2).
inline double purity_of_coefficients(const std::vector<Complex>& a, std::size_t dim_a,
                                     std::size_t dim_b) {
  double s = 0.0;
  for (std::size_t i = 0; i < dim_a; ++i)
    for (std::size_t j = 0; j < dim_a; ++j) {
      Complex rij{};
      for (std::size_t k = 0; k < dim_b; ++k) rij += a[i * dim_b + k] * std::conj(a[j * dim_b + k]);
      s += std::norm(rij);
    }
  return s;
}

/// Apply independent random local unitaries to every party.
inline PureState random_local_rotation(const PureState& psi, std::mt19937_64& rng) {
  Matrix u = Matrix::identity(1);
  for (auto d : psi.dims()) u = kron(u, random_unitary(d, rng));
  return PureState::normalized(gisin::apply(u, psi.amplitudes()), psi.dims());
}

} // namespace gisin::testing
