#include "gisin/projection.hpp"

#include <algorithm>
#include <cmath>

#include "gisin/errors.hpp"

namespace gisin {

namespace {

// L = |j><k| - |k><j| sends |k> to |j> and |j> to -|k>. Output slot r of the
// compact basis (j_a j_b, j_a k_b, k_a j_b, k_a k_b) reads the source index
// and sign listed here.
struct SupportMap {
  std::array<std::size_t, 4> source;
  std::array<double, 4> sign;
};

SupportMap support_map(std::size_t dim_b, const Generator& ga, const Generator& gb) {
  auto at = [dim_b](std::size_t ia, std::size_t ib) { return ia * dim_b + ib; };
  return {{at(ga.k, gb.k), at(ga.k, gb.j), at(ga.j, gb.k), at(ga.j, gb.j)},
          {+1.0, -1.0, -1.0, +1.0}};
}

void check_pair(std::size_t dim_a, std::size_t dim_b, const Generator& ga, const Generator& gb) {
  check_generator(ga);
  check_generator(gb);
  if (ga.dim != dim_a || gb.dim != dim_b) {
    throw DimensionError("generator dims (" + std::to_string(ga.dim) + ", " +
                         std::to_string(gb.dim) + ") do not match bipartite dims (" +
                         std::to_string(dim_a) + ", " + std::to_string(dim_b) + ")");
  }
}

ProjectedTwoQubit finish(Matrix block, Provenance provenance) {
  const double weight = frobenius_norm(block);
  if (!(weight >= kDegenerateWeight)) {
    throw DegenerateProjection("projection onto generators (" + std::to_string(provenance.a.j) +
                               "," + std::to_string(provenance.a.k) + ") x (" +
                               std::to_string(provenance.b.j) + "," +
                               std::to_string(provenance.b.k) + ") annihilates the state");
  }
  const double probability = block.trace().real();
  block *= 1.0 / probability;
  return {std::move(block), weight, probability, std::move(provenance)};
}

Provenance trivial_provenance(const Dims& dims, const Generator& ga, const Generator& gb) {
  return {make_bipartition(dims, {0}), ga, gb};
}

} // namespace

std::uint64_t Bipartition::mask() const noexcept {
  std::uint64_t m = 0;
  for (auto p : parties_a) m |= std::uint64_t{1} << p;
  return m;
}

std::string Bipartition::label() const {
  std::string out;
  auto append = [&out](const std::vector<std::size_t>& parties) {
    for (std::size_t i = 0; i < parties.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(parties[i]);
    }
  };
  append(parties_a);
  out += '|';
  append(parties_b);
  return out;
}

Bipartition make_bipartition(const Dims& dims, std::vector<std::size_t> parties_a) {
  check_dims(dims, dims_product(dims));
  std::sort(parties_a.begin(), parties_a.end());
  parties_a.erase(std::unique(parties_a.begin(), parties_a.end()), parties_a.end());
  if (parties_a.empty() || parties_a.front() != 0)
    throw ValidationError("bipartition: part A must contain party 0");
  if (parties_a.back() >= dims.size()) throw ValidationError("bipartition: party index out of range");
  if (parties_a.size() == dims.size()) throw ValidationError("bipartition: part B is empty");

  Bipartition p;
  p.dim_a = p.dim_b = 1;
  for (std::size_t party = 0; party < dims.size(); ++party) {
    if (std::binary_search(parties_a.begin(), parties_a.end(), party)) {
      p.parties_a.push_back(party);
      p.dim_a *= dims[party];
    } else {
      p.parties_b.push_back(party);
      p.dim_b *= dims[party];
    }
  }
  return p;
}

std::vector<Bipartition> enumerate_bipartitions(const Dims& dims) {
  if (dims.size() < 2) throw ValidationError("enumerate_bipartitions: need at least 2 parties");
  if (dims.size() > 63) throw ValidationError("enumerate_bipartitions: too many parties");
  const std::uint64_t full = (std::uint64_t{1} << dims.size()) - 1;
  std::vector<Bipartition> out;
  for (std::uint64_t m = 1; m < full; m += 2) { // odd masks: party 0 in A
    std::vector<std::size_t> a;
    for (std::size_t p = 0; p < dims.size(); ++p)
      if (m >> p & 1) a.push_back(p);
    out.push_back(make_bipartition(dims, std::move(a)));
  }
  return out;
}

std::vector<std::size_t> split_permutation(const Dims& dims, const Bipartition& p) {
  const std::size_t n = dims_product(dims);
  std::vector<std::size_t> strides(dims.size(), 1);
  for (std::size_t i = dims.size(); i-- > 1;) strides[i - 1] = strides[i] * dims[i];

  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t a = 0, b = 0;
    for (auto party : p.parties_a) a = a * dims[party] + (i / strides[party]) % dims[party];
    for (auto party : p.parties_b) b = b * dims[party] + (i / strides[party]) % dims[party];
    perm[i] = a * p.dim_b + b;
  }
  return perm;
}

PureState split_state(const PureState& state, const Bipartition& p) {
  const auto perm = split_permutation(state.dims(), p);
  std::vector<Complex> out(state.dimension());
  for (std::size_t i = 0; i < perm.size(); ++i) out[perm[i]] = state.amplitudes()[i];
  return PureState(std::move(out), Dims{p.dim_a, p.dim_b});
}

DensityMatrix split_state(const DensityMatrix& state, const Bipartition& p) {
  const auto perm = split_permutation(state.dims(), p);
  const auto& in = state.matrix();
  Matrix out(in.rows(), in.cols());
  for (std::size_t r = 0; r < perm.size(); ++r)
    for (std::size_t c = 0; c < perm.size(); ++c) out(perm[r], perm[c]) = in(r, c);
  return DensityMatrix::unchecked(std::move(out), Dims{p.dim_a, p.dim_b});
}

PureState merge_state(const PureState& split, const Bipartition& p, const Dims& dims) {
  const auto perm = split_permutation(dims, p);
  if (perm.size() != split.dimension()) throw DimensionError("merge_state: size mismatch");
  std::vector<Complex> out(split.dimension());
  for (std::size_t i = 0; i < perm.size(); ++i) out[i] = split.amplitudes()[perm[i]];
  return PureState(std::move(out), dims);
}

DensityMatrix merge_state(const DensityMatrix& split, const Bipartition& p, const Dims& dims) {
  const auto perm = split_permutation(dims, p);
  if (perm.size() != split.dimension()) throw DimensionError("merge_state: size mismatch");
  const auto& in = split.matrix();
  Matrix out(in.rows(), in.cols());
  for (std::size_t r = 0; r < perm.size(); ++r)
    for (std::size_t c = 0; c < perm.size(); ++c) out(r, c) = in(perm[r], perm[c]);
  return DensityMatrix::unchecked(std::move(out), dims);
}

std::array<Complex, 4> project_pure_vector(std::span<const Complex> amplitudes, std::size_t dim_b,
                                           const Generator& ga, const Generator& gb) {
  const auto map = support_map(dim_b, ga, gb);
  std::array<Complex, 4> v{};
  for (std::size_t r = 0; r < 4; ++r) v[r] = map.sign[r] * amplitudes[map.source[r]];
  return v;
}

Matrix project_block(const Matrix& rho, std::size_t dim_b, const Generator& ga,
                     const Generator& gb) {
  const auto map = support_map(dim_b, ga, gb);
  Matrix block(4, 4);
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c)
      block(r, c) = map.sign[r] * map.sign[c] * rho(map.source[r], map.source[c]);
  return block;
}

ProjectedTwoQubit project_two_qubit(const DensityMatrix& rho, const Generator& ga,
                                    const Generator& gb) {
  if (rho.parties() != 2)
    throw DimensionError("project_two_qubit: state must be bipartite; call split_state first");
  check_pair(rho.dims()[0], rho.dims()[1], ga, gb);
  return finish(project_block(rho.matrix(), rho.dims()[1], ga, gb),
                trivial_provenance(rho.dims(), ga, gb));
}

ProjectedTwoQubit project_two_qubit(const PureState& psi, const Generator& ga, const Generator& gb) {
  if (psi.parties() != 2)
    throw DimensionError("project_two_qubit: state must be bipartite; call split_state first");
  check_pair(psi.dims()[0], psi.dims()[1], ga, gb);
  const auto v = project_pure_vector(psi.amplitudes(), psi.dims()[1], ga, gb);
  return finish(outer(v), trivial_provenance(psi.dims(), ga, gb));
}

} // namespace gisin
