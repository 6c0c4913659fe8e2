#include "gisin/distill.hpp"

#include "gisin/chsh.hpp"
#include "gisin/concurrence.hpp"
#include "gisin/errors.hpp"

namespace gisin {

namespace {

Matrix qubit_map(const Generator& g) {
  // A = |0'><j| + |1'><k|, then P = A L.
  Matrix a(2, g.dim);
  a(0, g.j) = 1.0;
  a(1, g.k) = 1.0;
  return a * generator_matrix(g);
}

} // namespace

std::string to_string(Distillability d) {
  return d == Distillability::Distillable ? "Distillable" : "Inconclusive";
}

DistillProjectors build_projectors(const Generator& ga, const Generator& gb) {
  check_generator(ga);
  check_generator(gb);
  return {qubit_map(ga), qubit_map(gb), {make_bipartition(Dims{ga.dim, gb.dim}, {0}), ga, gb}};
}

Matrix apply_projectors(const DistillProjectors& projectors, const DensityMatrix& rho) {
  if (rho.parties() != 2 || rho.dims()[0] != projectors.p.cols() ||
      rho.dims()[1] != projectors.q.cols()) {
    throw DimensionError("apply_projectors: state dims do not match the projectors");
  }
  const Matrix pq = kron(projectors.p, projectors.q);
  return pq * rho.matrix() * pq.adjoint();
}

DistillWitness distillability_witness(const DensityMatrix& rho, const SweepOptions& options) {
  const auto report = sweep(State{rho}, options);
  DistillWitness out;
  out.best_violation = report.best_violation();
  if (report.verdict != Verdict::Entangled) return out;

  const auto& record = *report.best_record();
  auto projectors = build_projectors(record.provenance.a, record.provenance.b);
  projectors.provenance = record.provenance;

  Matrix output = apply_projectors(projectors, split_state(rho, record.provenance.partition));
  out.success_weight = output.trace().real();
  output *= 1.0 / out.success_weight;

  out.verdict = Distillability::Distillable;
  out.record = record;
  out.projectors = std::move(projectors);
  out.output_concurrence = wootters_concurrence(output);
  const std::size_t second = 1;
  out.output_min_pt_eigenvalue =
      hermitian_eigenvalues(partial_transpose(output, Dims{2, 2}, std::span(&second, 1))).front();
  out.output = std::move(output);
  return out;
}

PptResult ppt_check(const DensityMatrix& rho, const Bipartition& cut) {
  const auto pt = partial_transpose(rho.matrix(), rho.dims(), cut.parties_b);
  PptResult out;
  out.min_eigenvalue = hermitian_eigenvalues(pt).front();
  out.is_ppt = out.min_eigenvalue >= -1e-10;
  return out;
}

} // namespace gisin
