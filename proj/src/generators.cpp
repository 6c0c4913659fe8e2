#include "gisin/generators.hpp"

#include <cmath>
#include <string>

#include "gisin/errors.hpp"

namespace gisin {

namespace {

void check_unit(const Vec3& a, const char* name) {
  const double n = std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
  if (std::abs(n - 1.0) > 1e-12) {
    throw ValidationError(std::string("measurement direction ") + name + " has norm " +
                          std::to_string(n) + ", expected 1");
  }
}

Matrix combine(const Matrix& a1, const Matrix& a2, const Matrix& b1, const Matrix& b2) {
  return kron(a1, b1 + b2) + kron(a2, b1 - b2);
}

} // namespace

void check_generator(const Generator& g) {
  if (!(g.j < g.k && g.k < g.dim)) {
    throw ValidationError("generator requires 0 <= j < k < dim, got dim=" + std::to_string(g.dim) +
                          " j=" + std::to_string(g.j) + " k=" + std::to_string(g.k));
  }
}

std::size_t generator_count(std::size_t dim) { return dim < 2 ? 0 : dim * (dim - 1) / 2; }

std::vector<Generator> enumerate_generators(std::size_t dim) {
  if (dim < 2) throw ValidationError("enumerate_generators: dimension must be >= 2");
  std::vector<Generator> out;
  out.reserve(generator_count(dim));
  for (std::size_t j = 0; j < dim; ++j)
    for (std::size_t k = j + 1; k < dim; ++k) out.push_back({dim, j, k});
  return out;
}

Matrix generator_matrix(const Generator& g) {
  check_generator(g);
  Matrix m(g.dim, g.dim);
  m(g.j, g.k) = 1.0;
  m(g.k, g.j) = -1.0;
  return m;
}

void check_setting(const MeasurementSetting& s) {
  check_unit(s.a1, "a1");
  check_unit(s.a2, "a2");
  check_unit(s.b1, "b1");
  check_unit(s.b2, "b2");
}

Matrix block_observable(const Vec3& a) {
  return Matrix{{-a[2], Complex(a[0], a[1])}, {Complex(a[0], -a[1]), a[2]}};
}

Matrix embed_observable(const Vec3& a, const Generator& g) {
  check_unit(a, "a");
  check_generator(g);
  const Matrix block = block_observable(a);
  Matrix m(g.dim, g.dim);
  m(g.j, g.j) = block(0, 0);
  m(g.j, g.k) = block(0, 1);
  m(g.k, g.j) = block(1, 0);
  m(g.k, g.k) = block(1, 1);
  return m;
}

Matrix tilde_observable(const Vec3& a, const Generator& g) {
  const Matrix l = generator_matrix(g);
  return l * embed_observable(a, g) * l.adjoint();
}

Matrix bell_operator(const Generator& ga, const Generator& gb, const MeasurementSetting& s) {
  return combine(tilde_observable(s.a1, ga), tilde_observable(s.a2, ga),
                 tilde_observable(s.b1, gb), tilde_observable(s.b2, gb));
}

Matrix chsh_operator(const MeasurementSetting& s) {
  check_setting(s);
  return combine(block_observable(s.a1), block_observable(s.a2), block_observable(s.b1),
                 block_observable(s.b2));
}

} // namespace gisin
