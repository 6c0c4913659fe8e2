#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gisin/generators.hpp"
#include "gisin/projection.hpp"
#include "gisin/states.hpp"

namespace gisin {

enum class Verdict { Separable, Entangled, Inconclusive };
enum class StateKind { Pure, Density };

std::string to_string(Verdict v);
std::string to_string(StateKind k);

/// One projected CHSH test. Degenerate records carry zeros.
struct ViolationRecord {
  std::size_t partition_index = 0;
  Provenance provenance;
  double weight = 0.0;
  double concurrence = 0.0;
  double max_violation = 0.0;
  std::optional<MeasurementSetting> settings;
  bool degenerate = false;
};

struct SweepOptions {
  /// Violation is declared when the best value exceeds 2 + violation_tol.
  double violation_tol = 1e-9;
  /// Pure states whose largest projected concurrence is at most this are
  /// reported Separable when nothing violates; otherwise Inconclusive.
  double concurrence_tol = 1e-7;
  /// Refuse sweeps with more (p, alpha, beta) projections than this.
  std::uint64_t budget = 10'000'000;
  /// Run the see-saw on every non-degenerate record, not just the best.
  bool settings_for_all = false;
};

struct SweepReport {
  StateKind kind = StateKind::Pure;
  Dims dims;
  std::vector<Bipartition> partitions;
  std::vector<ViolationRecord> records; ///< canonical (p, alpha, beta) order
  std::optional<std::size_t> best;      ///< index of the largest max_violation
  Verdict verdict = Verdict::Inconclusive;
  double tolerance = 1e-9;

  double best_violation() const;
  const ViolationRecord* best_record() const;
};

/// Number of (p, alpha, beta) projections a full sweep over `dims` visits.
std::uint64_t projection_count(const Dims& dims);

/// Recomputes the normalized two-qubit projection a record refers to.
/// Throws DegenerateProjection for degenerate provenance.
ProjectedTwoQubit project(const State& state, const Provenance& where);

/// Evaluates every projected two-qubit CHSH test over all bipartitions and
/// generator pairs. Pure states get Separable / Entangled / Inconclusive;
/// mixed states only Entangled (violation found) or Inconclusive.
/// Throws BudgetExceeded when projection_count exceeds options.budget.
SweepReport sweep(const State& state, const SweepOptions& options = {});

struct EntanglementVerdict {
  Verdict verdict = Verdict::Inconclusive;
  double best_violation = 0.0;
  std::optional<ViolationRecord> witness; ///< violating record with settings
};

EntanglementVerdict entanglement_verdict(const PureState& psi, double tol = 1e-9);

/// Counts from sampling Haar-random pure states and comparing the sweep
/// against an independent concurrence oracle (largest cut concurrence via
/// reduced purity).
struct TrialStatistics {
  Dims dims;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  double tolerance = 1e-9;
  double entangled_threshold = 1e-6; ///< oracle concurrence above this: entangled
  double separable_threshold = 1e-9; ///< oracle concurrence at most this: separable
  std::size_t entangled_violating = 0;
  std::size_t entangled_not_violating = 0;
  std::size_t separable_violating = 0;
  std::size_t separable_quiet = 0;
  std::size_t indeterminate = 0; ///< oracle concurrence between the two thresholds
  double min_best_violation = 0.0;
  double max_best_violation = 0.0;
  double max_gisin_gap = 0.0; ///< max |best - 2 sqrt(1 + C_max^2)| over non-degenerate records

  bool theorem_holds() const { return entangled_not_violating == 0 && separable_violating == 0; }
};

/// Per-trial seed for trial i of a run seeded with `seed`.
std::uint64_t trial_seed(std::uint64_t seed, std::size_t i);

TrialStatistics random_trials(const Dims& dims, std::size_t n, std::uint64_t seed, double tol = 1e-9);

} // namespace gisin
