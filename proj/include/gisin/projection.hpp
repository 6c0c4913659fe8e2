#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "gisin/generators.hpp"
#include "gisin/linalg.hpp"
#include "gisin/states.hpp"

namespace gisin {

/// Split of the parties into part A (always containing party 0) and its
/// complement B.
struct Bipartition {
  std::vector<std::size_t> parties_a;
  std::vector<std::size_t> parties_b;
  std::size_t dim_a = 0;
  std::size_t dim_b = 0;

  /// Bit p set iff party p is in A.
  std::uint64_t mask() const noexcept;
  /// e.g. "0,2|1"
  std::string label() const;

  friend bool operator==(const Bipartition&, const Bipartition&) = default;
};

/// Throws ValidationError unless parties_a contains party 0 and leaves B nonempty.
Bipartition make_bipartition(const Dims& dims, std::vector<std::size_t> parties_a);

/// All 2^(L-1) - 1 bipartitions, ordered by the bitmask of part A.
std::vector<Bipartition> enumerate_bipartitions(const Dims& dims);

/// Index map old composite index -> regrouped (A most significant, B least).
std::vector<std::size_t> split_permutation(const Dims& dims, const Bipartition& p);

/// Regroups amplitudes/entries so the result has dims (dimA, dimB).
PureState split_state(const PureState& state, const Bipartition& p);
DensityMatrix split_state(const DensityMatrix& state, const Bipartition& p);
/// Inverse of split_state back to the original party dims.
PureState merge_state(const PureState& split, const Bipartition& p, const Dims& dims);
DensityMatrix merge_state(const DensityMatrix& split, const Bipartition& p, const Dims& dims);

struct Provenance {
  Bipartition partition;
  Generator a;
  Generator b;
};

/// Normalized two-qubit image of L_a (x) L_b rho (L_a (x) L_b)^dagger.
///
/// `compact` rows/cols are ordered (j_a j_b, j_a k_b, k_a j_b, k_a k_b) and
/// normalized to unit trace. `weight` is the Frobenius norm of the
/// unnormalized projection; `probability` is its trace. Both coincide for
/// pure inputs.
struct ProjectedTwoQubit {
  Matrix compact;
  double weight = 0.0;
  double probability = 0.0;
  Provenance provenance;
};

inline constexpr double kDegenerateWeight = 1e-14;

/// Unnormalized projected vector (L_a (x) L_b)|psi> restricted to the four
/// support entries, for a bipartite amplitude array of shape dimA x dimB.
std::array<Complex, 4> project_pure_vector(std::span<const Complex> amplitudes, std::size_t dim_b,
                                           const Generator& ga, const Generator& gb);

/// Unnormalized 4x4 support block of (L_a (x) L_b) rho (L_a (x) L_b)^dagger.
Matrix project_block(const Matrix& rho, std::size_t dim_b, const Generator& ga,
                     const Generator& gb);

/// `rho` must be bipartite (two dims) matching the generators. Throws
/// DegenerateProjection when the weight is below 1e-14.
ProjectedTwoQubit project_two_qubit(const DensityMatrix& rho, const Generator& ga,
                                    const Generator& gb);
ProjectedTwoQubit project_two_qubit(const PureState& psi, const Generator& ga, const Generator& gb);

} // namespace gisin
