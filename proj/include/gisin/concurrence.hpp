#pragma once

#include <vector>

#include "gisin/linalg.hpp"
#include "gisin/projection.hpp"
#include "gisin/states.hpp"

namespace gisin {

/// Tr(rho_A^2) of a pure state across the cut.
double reduced_purity(const PureState& psi, const Bipartition& cut);

/// sqrt(2 (1 - Tr rho_A^2)).
double pure_bipartite_concurrence(const PureState& psi, const Bipartition& cut);

/// 2 |v00 v11 - v01 v10| / <v|v> for an unnormalized two-qubit vector.
double two_qubit_pure_concurrence(std::span<const Complex, 4> v);

/// Wootters concurrence max(0, l1 - l2 - l3 - l4) of a 4x4 density matrix,
/// with l_i the descending square roots of the eigenvalues of
/// rho (sy (x) sy) rho* (sy (x) sy).
double wootters_concurrence(const Matrix& rho);

/// Normalization K = d / (2 m (d - 1)) with m = 2^(L-1) - 1.
double multipartite_k_factor(std::size_t local_dim, std::size_t parties);

/// Concurrence of an L-partite pure state whose parties all have dimension
/// d: sqrt(K * sum_p sum_{alpha,beta} (2 |minor|)^2) over all bipartitions
/// and generator pairs. Throws ValidationError if psi's dims are not (d, ..., d).
double multipartite_concurrence(const PureState& psi, std::size_t local_dim, std::size_t parties);
double multipartite_concurrence(const PureState& psi);

struct ConcurrenceTerm {
  std::size_t partition_index = 0;
  Provenance provenance;
  double weight = 0.0;      ///< <v|v> of the projected vector
  double concurrence = 0.0; ///< of the normalized projected state
};

/// total^2 == k_factor * sum(weight^2 * concurrence^2).
struct ConcurrenceBreakdown {
  double total = 0.0;
  double k_factor = 1.0;
  std::vector<ConcurrenceTerm> terms;
};

/// Terms over every non-degenerate (p, alpha, beta) projection.
///
/// Bipartite states use K = 1 (total is pure_bipartite_concurrence); states
/// with L >= 3 equal local dimensions use multipartite_k_factor; unequal local
/// dimensions use K = 1/m.
ConcurrenceBreakdown concurrence_decomposition(const PureState& psi);

} // namespace gisin
