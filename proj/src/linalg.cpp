#include "gisin/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

#include "gisin/errors.hpp"

namespace gisin {

namespace {

void require_same_shape(const Matrix& a, const Matrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    std::ostringstream msg;
    msg << what << ": shape mismatch " << a.rows() << "x" << a.cols() << " vs " << b.rows() << "x"
        << b.cols();
    throw DimensionError(msg.str());
  }
}

// Row-major digit strides; party 0 is most significant.
std::vector<std::size_t> strides_of(const Dims& dims) {
  std::vector<std::size_t> strides(dims.size(), 1);
  for (std::size_t i = dims.size(); i-- > 1;) strides[i - 1] = strides[i] * dims[i];
  return strides;
}

std::vector<bool> party_mask(const Dims& dims, std::span<const std::size_t> parties) {
  std::vector<bool> mask(dims.size(), false);
  for (auto p : parties) {
    if (p >= dims.size()) throw DimensionError("party index " + std::to_string(p) + " out of range");
    mask[p] = true;
  }
  return mask;
}

void check_square_state(const Matrix& rho, const Dims& dims, const char* what) {
  if (!rho.is_square()) throw DimensionError(std::string(what) + ": matrix is not square");
  check_dims(dims, rho.rows());
}

} // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, Complex{}) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) {
    throw DimensionError("matrix needs " + std::to_string(rows_ * cols_) + " entries, got " +
                         std::to_string(entries_.size()));
  }
}

Matrix::Matrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  entries_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw DimensionError("ragged matrix literal");
    entries_.insert(entries_.end(), row.begin(), row.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> values) {
  Matrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

Matrix Matrix::adjoint() const {
  Matrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

Matrix Matrix::transpose() const {
  Matrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  return out;
}

Matrix Matrix::conjugate() const {
  Matrix out = *this;
  for (auto& z : out.entries_) z = std::conj(z);
  return out;
}

Complex Matrix::trace() const {
  if (!is_square()) throw DimensionError("trace of a non-square matrix");
  Complex t{};
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

Matrix& Matrix::operator+=(const Matrix& other) {
  require_same_shape(*this, other, "matrix sum");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  require_same_shape(*this, other, "matrix difference");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= other.entries_[i];
  return *this;
}

Matrix& Matrix::operator*=(Complex scale) {
  for (auto& z : entries_) z *= scale;
  return *this;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator*(Matrix a, Complex scale) { return a *= scale; }
Matrix operator*(Complex scale, Matrix a) { return a *= scale; }

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("matrix product: inner dimensions " + std::to_string(a.cols()) + " and " +
                         std::to_string(b.rows()));
  }
  Matrix out(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex s = a(r, k);
      if (s == Complex{}) continue;
      for (std::size_t c = 0; c < b.cols(); ++c) out(r, c) += s * b(k, c);
    }
  }
  return out;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i)
    worst = std::max(worst, std::abs(a.entries()[i] - b.entries()[i]));
  return worst;
}

double frobenius_norm(const Matrix& m) {
  double s = 0.0;
  for (const auto& z : m.entries()) s += std::norm(z);
  return std::sqrt(s);
}

double hermiticity_defect(const Matrix& m) {
  if (!m.is_square()) return INFINITY;
  double worst = 0.0;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = r; c < m.cols(); ++c)
      worst = std::max(worst, std::abs(m(r, c) - std::conj(m(c, r))));
  return worst;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ar = 0; ar < a.rows(); ++ar)
    for (std::size_t ac = 0; ac < a.cols(); ++ac) {
      const Complex s = a(ar, ac);
      if (s == Complex{}) continue;
      for (std::size_t br = 0; br < b.rows(); ++br)
        for (std::size_t bc = 0; bc < b.cols(); ++bc)
          out(ar * b.rows() + br, ac * b.cols() + bc) = s * b(br, bc);
    }
  return out;
}

Matrix outer(std::span<const Complex> v) {
  Matrix out(v.size(), v.size());
  for (std::size_t r = 0; r < v.size(); ++r)
    for (std::size_t c = 0; c < v.size(); ++c) out(r, c) = v[r] * std::conj(v[c]);
  return out;
}

std::vector<Complex> apply(const Matrix& m, std::span<const Complex> v) {
  if (m.cols() != v.size()) throw DimensionError("matrix-vector product: size mismatch");
  std::vector<Complex> out(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out[r] += m(r, c) * v[c];
  return out;
}

std::size_t dims_product(const Dims& dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

void check_dims(const Dims& dims, std::size_t size) {
  if (dims.empty()) throw DimensionError("dims must list at least one subsystem");
  for (auto d : dims)
    if (d < 2) throw DimensionError("every subsystem dimension must be >= 2");
  if (dims_product(dims) != size) {
    throw DimensionError("dims product " + std::to_string(dims_product(dims)) +
                         " does not match size " + std::to_string(size));
  }
}

Matrix partial_trace(const Matrix& rho, const Dims& dims, std::span<const std::size_t> keep) {
  check_square_state(rho, dims, "partial_trace");
  const auto kept = party_mask(dims, keep);
  const auto strides = strides_of(dims);

  std::size_t kept_dim = 1;
  for (std::size_t p = 0; p < dims.size(); ++p)
    if (kept[p]) kept_dim *= dims[p];

  // Per full index: composite index over kept parties and over traced parties.
  const std::size_t n = rho.rows();
  std::vector<std::size_t> kept_index(n), traced_index(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t k = 0, t = 0;
    for (std::size_t p = 0; p < dims.size(); ++p) {
      const std::size_t digit = (i / strides[p]) % dims[p];
      if (kept[p]) k = k * dims[p] + digit;
      else t = t * dims[p] + digit;
    }
    kept_index[i] = k;
    traced_index[i] = t;
  }

  Matrix out(kept_dim, kept_dim);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      if (traced_index[r] == traced_index[c]) out(kept_index[r], kept_index[c]) += rho(r, c);
  return out;
}

Matrix partial_transpose(const Matrix& rho, const Dims& dims, std::span<const std::size_t> parties) {
  check_square_state(rho, dims, "partial_transpose");
  const auto flipped = party_mask(dims, parties);
  const auto strides = strides_of(dims);

  const std::size_t n = rho.rows();
  Matrix out(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t r2 = r, c2 = c;
      for (std::size_t p = 0; p < dims.size(); ++p) {
        if (!flipped[p]) continue;
        const std::size_t dr = (r / strides[p]) % dims[p];
        const std::size_t dc = (c / strides[p]) % dims[p];
        r2 += (dc - dr) * strides[p]; // unsigned wraparound cancels
        c2 += (dr - dc) * strides[p];
      }
      out(r2, c2) = rho(r, c);
    }
  }
  return out;
}

EigenDecomposition hermitian_eigen(const Matrix& h) {
  if (!h.is_square()) throw ValidationError("hermitian_eigen: matrix is not square");
  const double defect = hermiticity_defect(h);
  if (defect > 1e-10) {
    throw ValidationError("hermitian_eigen: input is not Hermitian (defect " + std::to_string(defect) +
                          ")");
  }

  const std::size_t n = h.rows();
  Matrix a = h;
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = a(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex avg = 0.5 * (a(i, j) + std::conj(a(j, i)));
      a(i, j) = avg;
      a(j, i) = std::conj(avg);
    }
  }
  Matrix v = Matrix::identity(n);

  const double scale = std::max(1.0, frobenius_norm(a));
  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * std::norm(a(i, j));
    return std::sqrt(s);
  };

  for (int sweep = 0; sweep < 100 && off_norm() >= 1e-13 * scale; ++sweep) {
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double mag = std::abs(a(p, q));
        if (mag < 1e-300) continue;
        // Block [[app, |h| e^{i phi}], [.., aqq]] = P R P^dagger with P = diag(1, e^{-i phi}).
        const Complex phase = a(p, q) / mag;
        const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * mag);
        const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // Rotation G = P J P^dagger restricted to (p, q).
        const Complex gpp = c, gpq = s * phase, gqp = -s * std::conj(phase), gqq = c;

        for (std::size_t k = 0; k < n; ++k) { // columns: A <- A G
          const Complex akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * gpp + akq * gqp;
          a(k, q) = akp * gpq + akq * gqq;
        }
        for (std::size_t k = 0; k < n; ++k) { // rows: A <- G^dagger A
          const Complex apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(gpp) * apk + std::conj(gqp) * aqk;
          a(q, k) = std::conj(gpq) * apk + std::conj(gqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (std::size_t k = 0; k < n; ++k) {
          const Complex vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * gpp + vkq * gqp;
          v(k, q) = vkp * gpq + vkq * gqq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });

  EigenDecomposition out{std::vector<double>(n), Matrix(n, n)};
  for (std::size_t i = 0; i < n; ++i) {
    out.values[i] = a(order[i], order[i]).real();
    for (std::size_t k = 0; k < n; ++k) out.vectors(k, i) = v(k, order[i]);
  }
  return out;
}

std::vector<double> hermitian_eigenvalues(const Matrix& h) { return hermitian_eigen(h).values; }

} // namespace gisin
