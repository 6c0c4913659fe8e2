#pragma once

#include <optional>
#include <string>

#include "gisin/engine.hpp"
#include "gisin/linalg.hpp"
#include "gisin/projection.hpp"
#include "gisin/states.hpp"

namespace gisin {

/// Local maps onto a qubit on each side: P = A L_a with A = |0'><j| + |1'><k|
/// (2 x dimA), and Q = B L_b likewise (2 x dimB).
struct DistillProjectors {
  Matrix p;
  Matrix q;
  Provenance provenance;
};

DistillProjectors build_projectors(const Generator& ga, const Generator& gb);

/// (P (x) Q) rho (P (x) Q)^dagger, unnormalized; `rho` must be bipartite
/// with dims matching the projectors.
Matrix apply_projectors(const DistillProjectors& projectors, const DensityMatrix& rho);

enum class Distillability { Distillable, Inconclusive };
std::string to_string(Distillability d);

struct DistillWitness {
  Distillability verdict = Distillability::Inconclusive;
  double best_violation = 0.0;
  /// Present when Distillable.
  std::optional<ViolationRecord> record;
  std::optional<DistillProjectors> projectors;
  Matrix output;                   ///< normalized two-qubit state (4x4)
  double success_weight = 0.0;     ///< trace of the unnormalized output
  double output_concurrence = 0.0; ///< Wootters
  double output_min_pt_eigenvalue = 0.0;
};

/// Single-copy witness: if some projected CHSH test is violated, the
/// corresponding projectors map rho to an entangled two-qubit state.
DistillWitness distillability_witness(const DensityMatrix& rho, const SweepOptions& options = {});

struct PptResult {
  double min_eigenvalue = 0.0;
  bool is_ppt = false; ///< min_eigenvalue >= -1e-10
};

/// Minimum eigenvalue of the partial transpose on the B side of the cut.
PptResult ppt_check(const DensityMatrix& rho, const Bipartition& cut);

} // namespace gisin
