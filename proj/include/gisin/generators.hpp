#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "gisin/linalg.hpp"

namespace gisin {

/// Antisymmetric rotation generator |j><k| - |k><j| in dimension `dim`,
/// 0 <= j < k < dim.
///
/// Generators are enumerated lexicographically in (j, k); the position in
/// that list is the generator index alpha. For dim = 4:
///
///   alpha  0      1      2      3      4      5
///   (j,k)  (0,1)  (0,2)  (0,3)  (1,2)  (1,3)  (2,3)
///
/// so 1-based labels "L_2" and "L_6" in the three-qubit worked example are
/// (0,2) and (2,3).
struct Generator {
  std::size_t dim = 2;
  std::size_t j = 0;
  std::size_t k = 1;

  /// Position in the lexicographic enumeration.
  std::size_t index() const noexcept { return j * (2 * dim - j - 1) / 2 + (k - j - 1); }

  friend bool operator==(const Generator&, const Generator&) = default;
};

/// Throws ValidationError unless 0 <= j < k < dim.
void check_generator(const Generator& g);
std::size_t generator_count(std::size_t dim);
std::vector<Generator> enumerate_generators(std::size_t dim);
Matrix generator_matrix(const Generator& g);

using Vec3 = std::array<double, 3>;

/// Two unit directions per site for the CHSH combination.
struct MeasurementSetting {
  Vec3 a1{1.0, 0.0, 0.0};
  Vec3 a2{0.0, 0.0, 1.0};
  Vec3 b1{1.0, 0.0, 0.0};
  Vec3 b2{0.0, 0.0, 1.0};
};

/// Throws ValidationError if any direction deviates from unit norm by more
/// than 1e-12.
void check_setting(const MeasurementSetting& s);

/// [[-a3, a1 + i a2], [a1 - i a2, a3]]
Matrix block_observable(const Vec3& a);
/// dim x dim matrix carrying block_observable(a) on rows/cols (j, k), zero elsewhere.
Matrix embed_observable(const Vec3& a, const Generator& g);
/// L embed_observable(a, g) L^dagger.
Matrix tilde_observable(const Vec3& a, const Generator& g);

/// A~1 (x) B~1 + A~1 (x) B~2 + A~2 (x) B~1 - A~2 (x) B~2 on the full
/// dimA * dimB space.
Matrix bell_operator(const Generator& ga, const Generator& gb, const MeasurementSetting& s);

/// The same combination built from block observables on a two-qubit space.
/// Tr(bell_operator(ga, gb, s) rho) equals the projection weight (trace)
/// times the expectation of chsh_operator(s) on the normalized projection.
Matrix chsh_operator(const MeasurementSetting& s);

} // namespace gisin
