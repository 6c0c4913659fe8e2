#include "gisin/concurrence.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "gisin/errors.hpp"

namespace gisin {

namespace {

std::vector<Complex> regroup(const PureState& psi, const Bipartition& p) {
  const auto perm = split_permutation(psi.dims(), p);
  std::vector<Complex> out(psi.dimension());
  for (std::size_t i = 0; i < perm.size(); ++i) out[perm[i]] = psi.amplitudes()[i];
  return out;
}

double sum_squared_minors(std::span<const Complex> a, std::size_t dim_a, std::size_t dim_b) {
  double s = 0.0;
  for (std::size_t j = 0; j < dim_a; ++j)
    for (std::size_t k = j + 1; k < dim_a; ++k)
      for (std::size_t l = 0; l < dim_b; ++l)
        for (std::size_t m = l + 1; m < dim_b; ++m) {
          const Complex minor =
              a[j * dim_b + l] * a[k * dim_b + m] - a[j * dim_b + m] * a[k * dim_b + l];
          s += std::norm(minor);
        }
  return s;
}

const Matrix& sigma_yy() {
  static const Matrix m = [] {
    const Matrix sy{{0.0, Complex(0.0, -1.0)}, {Complex(0.0, 1.0), 0.0}};
    return kron(sy, sy);
  }();
  return m;
}

bool equal_local_dims(const Dims& dims) {
  return std::adjacent_find(dims.begin(), dims.end(), std::not_equal_to<>()) == dims.end();
}

} // namespace

double reduced_purity(const PureState& psi, const Bipartition& cut) {
  const Matrix rho_a = partial_trace(outer(psi.amplitudes()), psi.dims(), cut.parties_a);
  double s = 0.0;
  for (const auto& z : rho_a.entries()) s += std::norm(z); // Tr(rho^2) for Hermitian rho
  return s;
}

double pure_bipartite_concurrence(const PureState& psi, const Bipartition& cut) {
  return std::sqrt(std::max(0.0, 2.0 * (1.0 - reduced_purity(psi, cut))));
}

double two_qubit_pure_concurrence(std::span<const Complex, 4> v) {
  const double n = std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]) + std::norm(v[3]);
  if (!(n > 0.0)) return 0.0;
  return 2.0 * std::abs(v[0] * v[3] - v[1] * v[2]) / n;
}

double wootters_concurrence(const Matrix& rho) {
  if (rho.rows() != 4 || rho.cols() != 4)
    throw DimensionError("wootters_concurrence: expected a 4x4 two-qubit matrix");

  // With rho = X X^dagger, the l_i are the singular values of X^T (sy x sy) X.
  // Eigenvalues at rounding level are dropped so rank-deficient inputs keep
  // full precision; the singular values come from the Hermitian dilation
  // [[0, M], [M^dagger, 0]], whose spectrum is +-l_i.
  const auto eig = hermitian_eigen(rho);
  const double cutoff = 1e-14 * std::max(eig.values.back(), 0.0);
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < 4; ++i)
    if (eig.values[i] > cutoff) kept.push_back(i);
  const std::size_t rank = kept.size();
  if (rank == 0) return 0.0;

  Matrix x(4, rank);
  for (std::size_t c = 0; c < rank; ++c) {
    const double s = std::sqrt(eig.values[kept[c]]);
    for (std::size_t r = 0; r < 4; ++r) x(r, c) = s * eig.vectors(r, kept[c]);
  }
  const Matrix m = x.transpose() * sigma_yy() * x;

  Matrix dilation(2 * rank, 2 * rank);
  for (std::size_t r = 0; r < rank; ++r)
    for (std::size_t c = 0; c < rank; ++c) {
      dilation(r, rank + c) = m(r, c);
      dilation(rank + c, r) = std::conj(m(r, c));
    }
  const auto values = hermitian_eigenvalues(dilation);
  std::array<double, 4> l{};
  for (std::size_t i = 0; i < rank; ++i) l[i] = std::max(0.0, values[2 * rank - 1 - i]);
  return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

double multipartite_k_factor(std::size_t local_dim, std::size_t parties) {
  if (parties < 2 || parties > 63) throw ValidationError("multipartite_k_factor: bad party count");
  const double m = static_cast<double>((std::uint64_t{1} << (parties - 1)) - 1);
  const double d = static_cast<double>(local_dim);
  return d / (2.0 * m * (d - 1.0));
}

double multipartite_concurrence(const PureState& psi, std::size_t local_dim, std::size_t parties) {
  if (psi.parties() != parties || !equal_local_dims(psi.dims()) || psi.dims()[0] != local_dim) {
    throw ValidationError("multipartite_concurrence: state dims must be " +
                          std::to_string(parties) + " parties of dimension " +
                          std::to_string(local_dim));
  }
  double sum = 0.0;
  for (const auto& p : enumerate_bipartitions(psi.dims())) {
    const auto a = regroup(psi, p);
    sum += 4.0 * sum_squared_minors(a, p.dim_a, p.dim_b);
  }
  return std::sqrt(multipartite_k_factor(local_dim, parties) * sum);
}

double multipartite_concurrence(const PureState& psi) {
  return multipartite_concurrence(psi, psi.dims().front(), psi.parties());
}

ConcurrenceBreakdown concurrence_decomposition(const PureState& psi) {
  const auto partitions = enumerate_bipartitions(psi.dims());
  ConcurrenceBreakdown out;
  if (psi.parties() == 2) {
    out.k_factor = 1.0;
  } else if (equal_local_dims(psi.dims())) {
    out.k_factor = multipartite_k_factor(psi.dims().front(), psi.parties());
  } else {
    out.k_factor = 1.0 / static_cast<double>(partitions.size());
  }

  double cut_sum = 0.0;
  for (std::size_t pi = 0; pi < partitions.size(); ++pi) {
    const auto& p = partitions[pi];
    const double c = pure_bipartite_concurrence(psi, p);
    cut_sum += c * c;

    const auto a = regroup(psi, p);
    for (const auto& ga : enumerate_generators(p.dim_a)) {
      for (const auto& gb : enumerate_generators(p.dim_b)) {
        const auto v = project_pure_vector(a, p.dim_b, ga, gb);
        const double weight = std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]) + std::norm(v[3]);
        if (weight < kDegenerateWeight) continue;
        out.terms.push_back({pi, {p, ga, gb}, weight, two_qubit_pure_concurrence(v)});
      }
    }
  }
  out.total = std::sqrt(out.k_factor * cut_sum);
  return out;
}

} // namespace gisin
