#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace gisin {

using Complex = std::complex<double>;

/// Ordered subsystem dimensions d_1..d_L. Party 0 is the most significant
/// digit of a composite basis index.
using Dims = std::vector<std::size_t>;

/// Dense row-major complex matrix.
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  Matrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  Matrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> values);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  std::span<const Complex> entries() const noexcept { return entries_; }

  Matrix adjoint() const;
  Matrix transpose() const;
  Matrix conjugate() const;
  Complex trace() const;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(Complex scale);

  friend bool operator==(const Matrix&, const Matrix&) = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> entries_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(Matrix a, Complex scale);
Matrix operator*(Complex scale, Matrix a);
Matrix operator*(const Matrix& a, const Matrix& b);

/// Largest entrywise modulus of a - b. Shapes must agree.
double max_abs_diff(const Matrix& a, const Matrix& b);
double frobenius_norm(const Matrix& m);
/// max |M[i][j] - conj(M[j][i])|
double hermiticity_defect(const Matrix& m);

Matrix kron(const Matrix& a, const Matrix& b);
/// |v><v|
Matrix outer(std::span<const Complex> v);
std::vector<Complex> apply(const Matrix& m, std::span<const Complex> v);

std::size_t dims_product(const Dims& dims);
/// Throws DimensionError unless every d_i >= 2 and the product equals `size`.
void check_dims(const Dims& dims, std::size_t size);

/// Reduced matrix on the `keep` parties (any order; result is ordered by
/// ascending party index).
Matrix partial_trace(const Matrix& rho, const Dims& dims, std::span<const std::size_t> keep);
/// Transposes the row/column digits of the listed parties only.
Matrix partial_transpose(const Matrix& rho, const Dims& dims, std::span<const std::size_t> parties);

struct EigenDecomposition {
  std::vector<double> values; ///< ascending
  Matrix vectors;             ///< column i is the eigenvector of values[i]
};

/// Cyclic complex Jacobi. Throws ValidationError when the input is not
/// Hermitian within 1e-10.
EigenDecomposition hermitian_eigen(const Matrix& h);
std::vector<double> hermitian_eigenvalues(const Matrix& h);

} // namespace gisin
