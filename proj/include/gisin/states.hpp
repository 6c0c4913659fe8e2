#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gisin/linalg.hpp"

namespace gisin {

class DensityMatrix;

/// Normalized amplitude vector tagged with subsystem dimensions.
class PureState {
public:
  /// Validates the dims product and unit norm (within 1e-10).
  PureState(std::vector<Complex> amplitudes, Dims dims);
  /// Rescales to unit norm; throws ValidationError on the zero vector.
  static PureState normalized(std::vector<Complex> amplitudes, Dims dims);

  std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
  const Dims& dims() const noexcept { return dims_; }
  std::size_t dimension() const noexcept { return amplitudes_.size(); }
  std::size_t parties() const noexcept { return dims_.size(); }

  DensityMatrix to_density() const;

private:
  struct Trusted {};
  PureState(Trusted, std::vector<Complex> amplitudes, Dims dims);

  std::vector<Complex> amplitudes_;
  Dims dims_;
};

/// Hermitian, unit-trace, positive semidefinite matrix tagged with subsystem
/// dimensions.
class DensityMatrix {
public:
  /// Validates Hermiticity and trace within 1e-10 and minimum eigenvalue
  /// >= -1e-8. The error message names the first offending entry pair.
  DensityMatrix(Matrix matrix, Dims dims);
  /// Skips the spectral check; for matrices built by trusted internal paths.
  static DensityMatrix unchecked(Matrix matrix, Dims dims);

  const Matrix& matrix() const noexcept { return matrix_; }
  const Dims& dims() const noexcept { return dims_; }
  std::size_t dimension() const noexcept { return matrix_.rows(); }
  std::size_t parties() const noexcept { return dims_.size(); }

private:
  struct Trusted {};
  DensityMatrix(Trusted, Matrix matrix, Dims dims);

  Matrix matrix_;
  Dims dims_;
};

using State = std::variant<PureState, DensityMatrix>;

const Dims& dims_of(const State& state);
DensityMatrix as_density(const State& state);

/// Three-qubit canonical form
///   l0|000> + l1 e^{i psi}|100> + l2|101> + l3|110> + l4|111>.
struct AcinParams {
  std::array<double, 5> lambda{};
  double psi = 0.0;
};

PureState bell_state();
PureState ghz_state(std::size_t parties, std::size_t local_dim);
PureState w_state(std::size_t parties);
/// Tensor product of the given local vectors (each normalized on entry).
PureState product_state(const std::vector<std::vector<Complex>>& locals);
/// Throws ValidationError unless every lambda >= 0, psi in [0, pi] and
/// sum lambda^2 == 1 within 1e-10.
PureState acin_state(const AcinParams& params);
/// p |Phi+><Phi+| + (1 - p) I/4 for p in [0, 1].
DensityMatrix werner_state(double p);
/// F |Phi_d><Phi_d| + (1 - F)(I - |Phi_d><Phi_d|)/(d^2 - 1) for F in [0, 1].
DensityMatrix isotropic_state(std::size_t local_dim, double fidelity);
/// 3x3 chessboard state with fixed real parameters chosen so that it is PPT
/// and violates the realignment criterion (hence entangled).
DensityMatrix chessboard_ppt_state();

/// Gaussian source: std::mt19937_64 bits, 53-bit uniforms, Box-Muller pairs.
/// The same seed gives the same stream on every platform.
class GaussianSource {
public:
  explicit GaussianSource(std::uint64_t seed);
  double uniform();
  double normal();
  Complex complex_normal();

private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Haar-distributed pure state: i.i.d. complex Gaussian amplitudes, normalized.
PureState haar_random_pure(const Dims& dims, std::uint64_t seed);
/// Product of independent Haar-random local states.
PureState random_product_pure(const Dims& dims, std::uint64_t seed);
/// Convex mixture of `terms` random product states with random weights.
DensityMatrix random_separable_mixture(const Dims& dims, std::size_t terms, std::uint64_t seed);

/// Parameters of a named-state spec; positional values are stored under "0", "1", ...
using ParamMap = std::map<std::string, std::string>;

struct NamedStateSpec {
  std::string name;
  ParamMap params;
};

/// Parses `name[:arg,arg,...]` where each arg is `key=value` or positional.
/// A positional of the form `AxB` expands to two positionals A and B.
NamedStateSpec parse_state_spec(std::string_view text);

/// Supported names: bell, ghz, w, product, acin, werner, isotropic, chessboard-ppt, haar.
State make_named_state(std::string_view name, const ParamMap& params);
State make_named_state(std::string_view spec);

/// State file (JSON):
///   {"kind": "pure", "dims": [...], "amplitudes": [[re, im], ...]}
///   {"kind": "density", "dims": [...], "entries": [[re, im], ...]}  (row-major)
State parse_state(std::string_view text);
std::string serialize_state(const State& state);
State read_state_file(const std::string& path);

} // namespace gisin
