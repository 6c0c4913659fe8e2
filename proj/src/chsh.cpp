#include "gisin/chsh.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gisin/errors.hpp"

namespace gisin {

namespace {

const std::array<Matrix, 3>& paulis() {
  static const std::array<Matrix, 3> p{
      Matrix{{0.0, 1.0}, {1.0, 0.0}},
      Matrix{{0.0, Complex(0.0, -1.0)}, {Complex(0.0, 1.0), 0.0}},
      Matrix{{1.0, 0.0}, {0.0, -1.0}},
  };
  return p;
}

using Mat3 = std::array<std::array<double, 3>, 3>;

Vec3 mul(const Mat3& m, const Vec3& v) {
  Vec3 out{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out[i] += m[i][j] * v[j];
  return out;
}

Mat3 transpose(const Mat3& m) {
  Mat3 out{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out[i][j] = m[j][i];
  return out;
}

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
Vec3 add(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
Vec3 sub(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }

// Normalizes v in place; keeps `fallback` when v vanishes.
Vec3 unit_or(const Vec3& v, const Vec3& fallback) {
  const double n = norm(v);
  if (n < 1e-300) return fallback;
  return {v[0] / n, v[1] / n, v[2] / n};
}

// Block observables use (a1, -a2, -a3).sigma, so Pauli-frame vectors and
// setting vectors differ by diag(1, -1, -1), an involution.
Vec3 reflect(const Vec3& v) { return {v[0], -v[1], -v[2]}; }

// Eigen decomposition of T^T T; columns of `vectors` are right singular directions.
EigenDecomposition right_singular(const Mat3& t) {
  Matrix gram(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += t[k][i] * t[k][j];
      gram(i, j) = s;
    }
  return hermitian_eigen(gram);
}

Vec3 column(const Matrix& m, std::size_t c) {
  return {m(0, c).real(), m(1, c).real(), m(2, c).real()};
}

struct FrameSetting {
  Vec3 x1, x2, y1, y2;
};

double frame_value(const Mat3& t, const FrameSetting& f) {
  return dot(f.x1, mul(t, add(f.y1, f.y2))) + dot(f.x2, mul(t, sub(f.y1, f.y2)));
}

struct Run {
  FrameSetting frame;
  double value = -INFINITY;
  std::size_t iterations = 0;
  std::vector<double> history;
};

Run alternate(const Mat3& t, FrameSetting f, const SeesawOptions& options) {
  const Mat3 tt = transpose(t);
  Run run;
  double previous = frame_value(t, f);
  for (std::size_t it = 0; it < options.max_iterations; ++it) {
    f.x1 = unit_or(mul(t, add(f.y1, f.y2)), f.x1);
    f.x2 = unit_or(mul(t, sub(f.y1, f.y2)), f.x2);
    f.y1 = unit_or(mul(tt, add(f.x1, f.x2)), f.y1);
    f.y2 = unit_or(mul(tt, sub(f.x1, f.x2)), f.y2);
    const double value = frame_value(t, f);
    run.history.push_back(value);
    run.iterations = it + 1;
    if (value - previous < options.improvement_tol) break;
    previous = value;
  }
  run.frame = f;
  run.value = run.history.empty() ? previous : run.history.back();
  return run;
}

Vec3 random_direction(GaussianSource& source) {
  Vec3 v{source.normal(), source.normal(), source.normal()};
  return unit_or(v, {1.0, 0.0, 0.0});
}

MeasurementSetting to_setting(const FrameSetting& f) {
  return {reflect(f.x1), reflect(f.x2), reflect(f.y1), reflect(f.y2)};
}

} // namespace

CorrelationMatrix correlation_matrix(const Matrix& rho) {
  if (rho.rows() != 4 || rho.cols() != 4)
    throw DimensionError("correlation_matrix: expected a 4x4 two-qubit matrix");
  CorrelationMatrix t{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const Matrix op = kron(paulis()[i], paulis()[j]);
      Complex s{};
      for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) s += op(r, c) * rho(c, r);
      t[i][j] = s.real();
    }
  return t;
}

double horodecki_max_violation(const CorrelationMatrix& t) {
  const auto eig = right_singular(t);
  const double u1 = std::max(0.0, eig.values[2]);
  const double u2 = std::max(0.0, eig.values[1]);
  return 2.0 * std::sqrt(u1 + u2);
}

double horodecki_max_violation(const Matrix& rho) {
  return horodecki_max_violation(correlation_matrix(rho));
}

double evaluate_bell(const Matrix& rho, const Matrix& op) {
  if (!rho.is_square() || !op.is_square() || rho.rows() != op.rows()) {
    throw DimensionError("evaluate_bell: operator is " + std::to_string(op.rows()) + "x" +
                         std::to_string(op.cols()) + ", state is " + std::to_string(rho.rows()) +
                         "x" + std::to_string(rho.cols()));
  }
  Complex s{};
  for (std::size_t r = 0; r < op.rows(); ++r)
    for (std::size_t c = 0; c < op.cols(); ++c) s += op(r, c) * rho(c, r);
  if (std::abs(s.imag()) > 1e-10) {
    throw ValidationError("evaluate_bell: expectation has imaginary part " +
                          std::to_string(s.imag()) + "; operator or state is not Hermitian");
  }
  return s.real();
}

double evaluate_bell(const DensityMatrix& rho, const Matrix& op) {
  return evaluate_bell(rho.matrix(), op);
}

SeesawResult seesaw_optimize(const Matrix& rho, const SeesawOptions& options) {
  const CorrelationMatrix t = correlation_matrix(rho);
  const auto singular = right_singular(t);
  const double closed = horodecki_max_violation(t);

  SeesawResult result;
  if (singular.values[2] < 1e-28) {
    // T vanishes: every setting gives zero.
    result.setting = MeasurementSetting{};
    result.value = evaluate_bell(rho, chsh_operator(result.setting));
    return result;
  }

  const Vec3 v1 = column(singular.vectors, 2);
  const Vec3 v2 = column(singular.vectors, 1);
  const double h = 1.0 / std::sqrt(2.0);
  FrameSetting start;
  start.y1 = unit_or({h * (v1[0] + v2[0]), h * (v1[1] + v2[1]), h * (v1[2] + v2[2])}, v1);
  start.y2 = unit_or({h * (v1[0] - v2[0]), h * (v1[1] - v2[1]), h * (v1[2] - v2[2])}, v2);
  start.x1 = unit_or(mul(t, v1), {1.0, 0.0, 0.0});
  start.x2 = unit_or(mul(t, v2), {0.0, 0.0, 1.0});

  Run best = alternate(t, start, options);
  GaussianSource source(options.seed);
  std::size_t restarts = 0;
  while (best.value < closed - 1e-9 && restarts < options.max_restarts) {
    ++restarts;
    FrameSetting random{random_direction(source), random_direction(source),
                        random_direction(source), random_direction(source)};
    Run run = alternate(t, random, options);
    if (run.value > best.value) best = std::move(run);
  }
  if (best.value < closed - 1e-8) {
    throw ConvergenceError("seesaw_optimize: best value " + std::to_string(best.value) +
                           " stays below the closed-form maximum " + std::to_string(closed) +
                           " after " + std::to_string(restarts) + " restarts");
  }

  result.setting = to_setting(best.frame);
  result.value = evaluate_bell(rho, chsh_operator(result.setting));
  result.iterations = best.iterations;
  result.restarts = restarts;
  result.history = std::move(best.history);
  return result;
}

} // namespace gisin
