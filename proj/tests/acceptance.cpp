// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "gisin/chsh.hpp"
#include "gisin/concurrence.hpp"
#include "gisin/distill.hpp"
#include "gisin/engine.hpp"
#include "gisin/states.hpp"

using namespace gisin;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* format, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, x);
  return buf;
}

std::string dims_label(const Dims& dims) {
  std::string s = "(";
  for (std::size_t i = 0; i < dims.size(); ++i) s += (i ? "," : "") + std::to_string(dims[i]);
  return s + ")";
}

Outcome theorem_trials(const std::vector<std::pair<Dims, std::size_t>>& runs, double budget_s) {
  Outcome o;
  const auto start = Clock::now();
  std::size_t counterexamples = 0;
  for (const auto& [dims, n] : runs) {
    const auto stats = random_trials(dims, n, 20240101 + dims.size() * 10 + dims.back());
    counterexamples += stats.entangled_not_violating + stats.separable_violating;
    o.detail += dims_label(dims) + " n=" + std::to_string(n) +
                " ent-quiet=" + std::to_string(stats.entangled_not_violating) +
                " sep-viol=" + std::to_string(stats.separable_violating) + "; ";
  }
  const double elapsed = seconds_since(start);
  o.pass = counterexamples == 0 && elapsed <= budget_s;
  o.detail += "runtime " + fmt("%.2f", elapsed) + " s (limit " + fmt("%.0f", budget_s) + " s)";
  return o;
}

const ViolationRecord* find_record(const SweepReport& report, const std::string& label,
                                   const Generator& a, const Generator& b) {
  for (const auto& r : report.records)
    if (r.provenance.partition.label() == label && r.provenance.a == a && r.provenance.b == b) return &r;
  return nullptr;
}

PureState acin_normalized(std::array<double, 5> lambda, double psi) {
  double n = 0.0;
  for (double x : lambda) n += x * x;
  AcinParams p;
  for (std::size_t i = 0; i < 5; ++i) p.lambda[i] = lambda[i] / std::sqrt(n);
  p.psi = psi;
  return acin_state(p);
}

Outcome case1_grid() {
  Outcome o;
  double worst = 0.0;
  std::size_t missing = 0;
  for (int i = 0; i < 10; ++i)
    for (int k = 0; k < 10; ++k) {
      const double l0 = 0.1 + 0.1 * i, l2 = 0.1 + 0.1 * k;
      const auto psi = acin_normalized({l0, 0.35, l2, 0.2, 0.15}, 0.9);
      const auto report = sweep(psi);
      const auto* r = find_record(report, "0,1|2", {4, 0, 2}, {2, 0, 1});
      if (!r || r->degenerate) {
        ++missing;
        continue;
      }
      const auto amps = psi.amplitudes();
      const double L0 = amps[0].real(), L1 = std::abs(amps[4]), L2 = amps[5].real();
      const double n2 = L0 * L0 + L1 * L1 + L2 * L2;
      const double expected = 2.0 * std::sqrt(1.0 + 4.0 * L0 * L0 * L2 * L2 / (n2 * n2));
      worst = std::max(worst, std::abs(r->max_violation - expected));
    }
  o.pass = missing == 0 && worst <= 1e-9;
  o.detail = "100 grid points, max |error| " + fmt("%.3g", worst) + " (tol 1e-9)";
  return o;
}

Outcome case2_grid() {
  Outcome o;
  double worst = 0.0;
  std::size_t points = 0, missing = 0;
  const double values[] = {0.15, 0.4, 0.7, 1.0};
  const double phases[] = {0.0, 0.6, 1.3, 2.2, 3.14159};
  for (double l1 : values)
    for (double l2 : values)
      for (double l3 : values)
        for (double l4 : values)
          for (double ph : phases) {
            const auto psi = acin_normalized({0.3, l1, l2, l3, l4}, ph);
            const auto report = sweep(psi);
            const auto* r = find_record(report, "0,1|2", {4, 2, 3}, {2, 0, 1});
            ++points;
            if (!r || r->degenerate) {
              ++missing;
              continue;
            }
            const auto a = psi.amplitudes();
            const Complex e1 = a[4]; // e^{i psi} l1
            const double L2 = a[5].real(), L3 = a[6].real(), L4 = a[7].real();
            const double n2 = std::norm(e1) + L2 * L2 + L3 * L3 + L4 * L4;
            const double minor = std::norm(e1 * L4 - L2 * L3);
            const double expected = 2.0 * std::sqrt(1.0 + 4.0 * minor / (n2 * n2));
            worst = std::max(worst, std::abs(r->max_violation - expected));
          }
  o.pass = missing == 0 && worst <= 1e-9;
  o.detail = std::to_string(points) + " grid points, max |error| " + fmt("%.3g", worst) + " (tol 1e-9)";
  return o;
}

Outcome concurrence_identity() {
  Outcome o;
  double worst = 0.0;
  const std::vector<Dims> bipartite{{2, 2}, {2, 3}, {3, 3}, {3, 4}};
  const std::vector<Dims> multipartite{{2, 2, 2}, {2, 2, 2, 2}, {3, 3, 3}};
  std::uint64_t seed = 900;
  for (const auto& dims : bipartite)
    for (int i = 0; i < 200; ++i) {
      const auto psi = haar_random_pure(dims, seed++);
      const auto d = concurrence_decomposition(psi);
      double sum = 0.0;
      for (const auto& t : d.terms) sum += t.weight * t.weight * t.concurrence * t.concurrence;
      const double direct = pure_bipartite_concurrence(psi, make_bipartition(dims, {0}));
      worst = std::max(worst, std::abs(std::sqrt(sum) - direct));
    }
  for (const auto& dims : multipartite)
    for (int i = 0; i < 200; ++i) {
      const auto psi = haar_random_pure(dims, seed++);
      const auto d = concurrence_decomposition(psi);
      double sum = 0.0;
      for (const auto& t : d.terms) sum += t.weight * t.weight * t.concurrence * t.concurrence;
      worst = std::max(worst, std::abs(std::sqrt(d.k_factor * sum) - multipartite_concurrence(psi)));
    }
  const double ghz = multipartite_concurrence(ghz_state(3, 2));
  const double w = multipartite_concurrence(w_state(3));
  const double ghz_err = std::abs(ghz - 1.0), w_err = std::abs(w - 2.0 * std::sqrt(2.0) / 3.0);
  o.pass = worst <= 1e-9 && ghz_err <= 1e-9 && w_err <= 1e-9;
  o.detail = "1400 states, max identity error " + fmt("%.3g", worst) + "; GHZ3 " + fmt("%.12f", ghz) +
             ", W3 " + fmt("%.12f", w) + " (tol 1e-9)";
  return o;
}

Matrix random_mixed_two_qubit(GaussianSource& src, std::size_t rank) {
  Matrix g(4, rank);
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < rank; ++c) g(r, c) = src.complex_normal();
  Matrix rho = g * g.adjoint();
  rho *= 1.0 / rho.trace().real();
  return rho;
}

Outcome seesaw_vs_closed_form() {
  Outcome o;
  double worst_gap = 0.0, worst_replay = 0.0;
  auto check = [&](const Matrix& rho, std::uint64_t seed) {
    SeesawOptions options;
    options.seed = seed;
    const auto result = seesaw_optimize(rho, options);
    worst_gap = std::max(worst_gap, std::abs(result.value - horodecki_max_violation(rho)));
    worst_replay =
        std::max(worst_replay, std::abs(evaluate_bell(rho, chsh_operator(result.setting)) - result.value));
  };
  for (std::uint64_t i = 0; i < 200; ++i) check(haar_random_pure({2, 2}, 5000 + i).to_density().matrix(), i);
  GaussianSource src(6000);
  for (std::uint64_t i = 0; i < 200; ++i) check(random_mixed_two_qubit(src, 2 + i % 3), i);
  o.pass = worst_gap <= 1e-8 && worst_replay <= 1e-12;
  o.detail = "400 states, max |seesaw - closed form| " + fmt("%.3g", worst_gap) +
             " (tol 1e-8), max replay error " + fmt("%.3g", worst_replay) + " (tol 1e-12)";
  return o;
}

Outcome werner_distillability() {
  Outcome o;
  const double threshold = 1.0 / std::sqrt(2.0) + 1e-6;
  std::size_t mismatches = 0, unsound = 0, distillable = 0;
  for (int i = 0; i < 100; ++i) {
    const double p = i / 99.0;
    const auto w = distillability_witness(werner_state(p));
    const bool declared = w.verdict == Distillability::Distillable;
    mismatches += declared != (p > threshold);
    if (declared) {
      ++distillable;
      unsound += !(w.output_concurrence > 0.0 && w.output_min_pt_eigenvalue < -1e-10);
    }
  }
  o.pass = mismatches == 0 && unsound == 0;
  o.detail = "100-point grid, " + std::to_string(distillable) + " distillable, " +
             std::to_string(mismatches) + " threshold mismatches, " + std::to_string(unsound) +
             " outputs not entangled+NPT";
  return o;
}

Outcome ppt_never_violates() {
  Outcome o;
  double worst = sweep(chessboard_ppt_state()).best_violation();
  const double chessboard = worst;
  const std::vector<Dims> dims_list{{2, 2}, {2, 3}, {3, 3}, {2, 2, 2}};
  for (int i = 0; i < 100; ++i) {
    const auto rho = random_separable_mixture(dims_list[i % dims_list.size()], 1 + i % 6, 7000 + i);
    worst = std::max(worst, sweep(rho).best_violation());
  }
  o.pass = worst <= 2.0 + 1e-9;
  o.detail = "chessboard best " + fmt("%.12f", chessboard) + ", max over chessboard + 100 separable mixtures " +
             fmt("%.12f", worst) + " (bound 2 + 1e-9)";
  return o;
}

std::string run_cli(std::vector<std::string> args, int& code) {
  args.insert(args.begin(), "gisin");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return out.str();
}

Outcome determinism() {
  Outcome o;
  const std::vector<std::vector<std::string>> commands{
      {"random-trials", "--dims", "2,2", "--n", "200", "--seed", "7"},
      {"random-trials", "--dims", "2,2,2", "--n", "20", "--seed", "7", "--format", "csv"},
      {"sweep", "--state", "haar:2x2x3,seed=11", "--settings-all"},
      {"sweep", "--state", "product:3x2,seed=4", "--format", "csv"},
      {"analyze", "--state", "haar:3x3,seed=2"},
      {"distill", "--state", "werner:0.85"},
      {"ppt", "--state", "chessboard-ppt"},
  };
  std::size_t differing = 0, failed = 0;
  for (auto args : commands) {
    args.push_back("--no-timestamp");
    int c1 = 0, c2 = 0;
    const auto a = run_cli(args, c1);
    const auto b = run_cli(args, c2);
    failed += c1 != 0 || c2 != 0;
    differing += a != b || a.empty();
  }
  o.pass = differing == 0 && failed == 0;
  o.detail = std::to_string(commands.size()) + " commands run twice, " + std::to_string(differing) +
             " differing, " + std::to_string(failed) + " failed";
  return o;
}

} // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "bipartite pure states: violation iff entangled",
       [] { return theorem_trials({{{2, 2}, 1000}, {{2, 3}, 1000}, {{3, 3}, 1000}}, 10.0); }},
      {2, "multipartite pure states: violation iff entangled",
       [] { return theorem_trials({{{2, 2, 2}, 500}, {{2, 2, 2, 2}, 200}}, 20.0); }},
      {3, "three-qubit first case closed form", case1_grid},
      {4, "three-qubit second case closed form", case2_grid},
      {5, "weighted concurrence decomposition", concurrence_identity},
      {6, "see-saw matches the closed form", seesaw_vs_closed_form},
      {7, "Werner distillability witness", werner_distillability},
      {8, "PPT states never violate", ppt_never_violates},
      {9, "deterministic CLI reports", determinism},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("%s  %d  %s: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
