#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "gisin/generators.hpp"
#include "gisin/linalg.hpp"
#include "gisin/states.hpp"

namespace gisin {

/// T[i][j] = Tr(rho sigma_i (x) sigma_j), i, j over (x, y, z).
using CorrelationMatrix = std::array<std::array<double, 3>, 3>;

/// Throws DimensionError unless rho is 4x4.
CorrelationMatrix correlation_matrix(const Matrix& rho);

/// max over settings of <CHSH> = 2 sqrt(u1 + u2), u1 >= u2 the two largest
/// eigenvalues of T^T T.
double horodecki_max_violation(const CorrelationMatrix& t);
double horodecki_max_violation(const Matrix& rho);

/// Tr(op rho). Throws DimensionError on shape mismatch and ValidationError if
/// the imaginary part exceeds 1e-10.
double evaluate_bell(const Matrix& rho, const Matrix& op);
double evaluate_bell(const DensityMatrix& rho, const Matrix& op);

struct SeesawResult {
  MeasurementSetting setting;
  double value = 0.0;          ///< evaluate_bell(rho, chsh_operator(setting))
  std::size_t iterations = 0;  ///< best-response rounds of the accepted run
  std::size_t restarts = 0;
  std::vector<double> history; ///< objective after each round of the accepted run
};

struct SeesawOptions {
  std::size_t max_iterations = 500;
  double improvement_tol = 1e-13;
  std::size_t max_restarts = 5;
  std::uint64_t seed = 0; ///< seeds the restart directions
};

/// Alternating best responses for the two sites' CHSH directions.
///
/// Starts from b1, b2 = (v1 +- v2)/sqrt(2) with v1, v2 the top right singular
/// directions of T; each half-step sets a1 ~ T(b1 + b2), a2 ~ T(b1 - b2)
/// (and symmetrically for b). Runs that end more than 1e-9 below the closed
/// form are restarted from random directions; throws ConvergenceError if no
/// run reaches within 1e-8 of it.
SeesawResult seesaw_optimize(const Matrix& rho, const SeesawOptions& options = {});

} // namespace gisin
