#include "gisin/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gisin/chsh.hpp"
#include "gisin/concurrence.hpp"
#include "gisin/errors.hpp"

namespace gisin {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t provenance_seed(const ViolationRecord& r) {
  return splitmix64(splitmix64(splitmix64(r.partition_index) ^ r.provenance.a.index()) ^
                    r.provenance.b.index());
}

// Either regrouped amplitudes or a regrouped density matrix for one bipartition.
struct SplitView {
  std::vector<Complex> amplitudes;
  Matrix matrix;
};

SplitView split_view(const State& state, const Bipartition& p) {
  SplitView view;
  if (const auto* pure = std::get_if<PureState>(&state)) {
    const auto perm = split_permutation(pure->dims(), p);
    view.amplitudes.resize(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) view.amplitudes[perm[i]] = pure->amplitudes()[i];
  } else {
    view.matrix = split_state(std::get<DensityMatrix>(state), p).matrix();
  }
  return view;
}

ViolationRecord evaluate(const SplitView& view, bool pure, std::size_t pi, const Bipartition& p,
                         const Generator& ga, const Generator& gb) {
  ViolationRecord rec;
  rec.partition_index = pi;
  rec.provenance = {p, ga, gb};

  Matrix block;
  double concurrence = 0.0;
  if (pure) {
    const auto v = project_pure_vector(view.amplitudes, p.dim_b, ga, gb);
    block = outer(v);
    concurrence = two_qubit_pure_concurrence(v);
  } else {
    block = project_block(view.matrix, p.dim_b, ga, gb);
  }
  const double weight = frobenius_norm(block);
  if (weight < kDegenerateWeight) {
    rec.degenerate = true;
    return rec;
  }
  block *= 1.0 / block.trace().real();
  rec.weight = weight;
  rec.concurrence = pure ? concurrence : wootters_concurrence(block);
  rec.max_violation = horodecki_max_violation(block);
  return rec;
}

} // namespace

std::string to_string(Verdict v) {
  switch (v) {
  case Verdict::Separable: return "Separable";
  case Verdict::Entangled: return "Entangled";
  case Verdict::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

std::string to_string(StateKind k) { return k == StateKind::Pure ? "pure" : "density"; }

double SweepReport::best_violation() const { return best ? records[*best].max_violation : 0.0; }

const ViolationRecord* SweepReport::best_record() const { return best ? &records[*best] : nullptr; }

std::uint64_t projection_count(const Dims& dims) {
  std::uint64_t total = 0;
  for (const auto& p : enumerate_bipartitions(dims)) total += generator_count(p.dim_a) * generator_count(p.dim_b);
  return total;
}

ProjectedTwoQubit project(const State& state, const Provenance& where) {
  if (const auto* pure = std::get_if<PureState>(&state)) {
    auto projected = project_two_qubit(split_state(*pure, where.partition), where.a, where.b);
    projected.provenance = where;
    return projected;
  }
  auto projected = project_two_qubit(split_state(std::get<DensityMatrix>(state), where.partition),
                                     where.a, where.b);
  projected.provenance = where;
  return projected;
}

SweepReport sweep(const State& state, const SweepOptions& options) {
  SweepReport report;
  report.kind = std::holds_alternative<PureState>(state) ? StateKind::Pure : StateKind::Density;
  report.dims = dims_of(state);
  report.tolerance = options.violation_tol;
  if (report.dims.size() < 2) throw ValidationError("sweep: need at least 2 parties");

  const auto count = projection_count(report.dims);
  if (count > options.budget) {
    throw BudgetExceeded("sweep over dims would visit " + std::to_string(count) +
                         " projections, above the budget of " + std::to_string(options.budget));
  }

  report.partitions = enumerate_bipartitions(report.dims);
  report.records.reserve(count);
  const bool pure = report.kind == StateKind::Pure;
  for (std::size_t pi = 0; pi < report.partitions.size(); ++pi) {
    const auto& p = report.partitions[pi];
    const auto view = split_view(state, p);
    for (const auto& ga : enumerate_generators(p.dim_a))
      for (const auto& gb : enumerate_generators(p.dim_b))
        report.records.push_back(evaluate(view, pure, pi, p, ga, gb));
  }

  double max_concurrence = 0.0;
  for (std::size_t i = 0; i < report.records.size(); ++i) {
    const auto& r = report.records[i];
    if (r.degenerate) continue;
    max_concurrence = std::max(max_concurrence, r.concurrence);
    if (!report.best || r.max_violation > report.records[*report.best].max_violation) report.best = i;
  }

  auto attach_settings = [&](ViolationRecord& r) {
    SeesawOptions seesaw;
    seesaw.seed = provenance_seed(r);
    r.settings = seesaw_optimize(project(state, r.provenance).compact, seesaw).setting;
  };
  if (options.settings_for_all) {
    for (auto& r : report.records)
      if (!r.degenerate) attach_settings(r);
  } else if (report.best) {
    attach_settings(report.records[*report.best]);
  }

  const bool violated = report.best_violation() > 2.0 + options.violation_tol;
  if (violated) report.verdict = Verdict::Entangled;
  else if (pure && max_concurrence <= options.concurrence_tol) report.verdict = Verdict::Separable;
  else report.verdict = Verdict::Inconclusive;
  return report;
}

EntanglementVerdict entanglement_verdict(const PureState& psi, double tol) {
  SweepOptions options;
  options.violation_tol = tol;
  const auto report = sweep(psi, options);
  EntanglementVerdict out;
  out.verdict = report.verdict;
  out.best_violation = report.best_violation();
  if (report.verdict == Verdict::Entangled) out.witness = *report.best_record();
  return out;
}

std::uint64_t trial_seed(std::uint64_t seed, std::size_t i) {
  return splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(i)));
}

TrialStatistics random_trials(const Dims& dims, std::size_t n, std::uint64_t seed, double tol) {
  if (n == 0) throw ValidationError("random_trials: n must be >= 1");
  TrialStatistics stats;
  stats.dims = dims;
  stats.n = n;
  stats.seed = seed;
  stats.tolerance = tol;
  stats.min_best_violation = std::numeric_limits<double>::infinity();
  stats.max_best_violation = -std::numeric_limits<double>::infinity();

  SweepOptions options;
  options.violation_tol = tol;
  const auto partitions = enumerate_bipartitions(dims);
  for (std::size_t i = 0; i < n; ++i) {
    const auto psi = haar_random_pure(dims, trial_seed(seed, i));
    const auto report = sweep(psi, options);

    double oracle = 0.0;
    for (const auto& p : partitions) oracle = std::max(oracle, pure_bipartite_concurrence(psi, p));

    const double best = report.best_violation();
    stats.min_best_violation = std::min(stats.min_best_violation, best);
    stats.max_best_violation = std::max(stats.max_best_violation, best);

    double max_c = 0.0;
    for (const auto& r : report.records)
      if (!r.degenerate) max_c = std::max(max_c, r.concurrence);
    if (report.best)
      stats.max_gisin_gap =
          std::max(stats.max_gisin_gap, std::abs(best - 2.0 * std::sqrt(1.0 + max_c * max_c)));

    const bool violating = best > 2.0 + tol;
    if (oracle > stats.entangled_threshold) {
      ++(violating ? stats.entangled_violating : stats.entangled_not_violating);
    } else if (oracle <= stats.separable_threshold) {
      ++(violating ? stats.separable_violating : stats.separable_quiet);
    } else {
      ++stats.indeterminate;
    }
  }
  return stats;
}

} // namespace gisin
