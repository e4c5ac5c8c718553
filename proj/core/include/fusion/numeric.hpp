#ifndef FUSION_NUMERIC_HPP
#define FUSION_NUMERIC_HPP

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "fusion/errors.hpp"

namespace fusion {

using cplx = std::complex<double>;

/// Scalar field of a matrix or frame. All objects combined in one
/// computation must share one field; mixing throws PreconditionError.
/// Storage is complex either way; a Real-tagged matrix has exactly zero
/// imaginary parts, so conjugation in adjoints makes real the special case.
enum class Field { Real, Complex };

const char* field_name(Field f);

struct Tolerance {
  double rel = 1e-10;
  double abs = 1e-12;

  Tolerance() = default;
  Tolerance(double rel_, double abs_);
};

/// Dense row-major matrix over F^(rows x cols) with a field tag.
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, Field field);

  static Matrix zero(std::size_t rows, std::size_t cols, Field field = Field::Real);
  static Matrix identity(std::size_t n, Field field = Field::Real);
  /// Real matrix from row lists.
  static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
  static Matrix from_rows(Field field, std::initializer_list<std::initializer_list<cplx>> rows);
  /// Column vector.
  static Matrix column(const std::vector<double>& entries);
  static Matrix column(Field field, const std::vector<cplx>& entries);
  /// Stack matrices side by side (same rows, same field).
  static Matrix hcat(const std::vector<Matrix>& parts);
  /// Stack matrices on top of each other (same cols, same field).
  static Matrix vcat(const std::vector<Matrix>& parts);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Field field() const { return field_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }
  bool is_vector() const { return cols_ == 1; }

  cplx& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  const std::vector<cplx>& data() const { return a_; }
  std::vector<cplx>& data() { return a_; }

  /// Conjugate transpose. For Real-tagged matrices this is the transpose.
  Matrix adjoint() const;
  Matrix transpose() const;
  /// Explicit promotion Real -> Complex (identity on Complex).
  Matrix promoted(Field field) const;
  Matrix col(std::size_t j) const;
  Matrix cols_range(std::size_t j0, std::size_t count) const;
  void set_col(std::size_t j, const Matrix& v);

  Matrix& operator+=(const Matrix& rhs);
  Matrix& operator-=(const Matrix& rhs);
  Matrix& operator*=(double s);
  Matrix& operator*=(cplx s); // requires Complex field unless imag(s) == 0

  friend Matrix operator+(Matrix lhs, const Matrix& rhs) { return lhs += rhs; }
  friend Matrix operator-(Matrix lhs, const Matrix& rhs) { return lhs -= rhs; }
  friend Matrix operator*(double s, Matrix m) { return m *= s; }
  friend Matrix operator*(cplx s, Matrix m) { return m *= s; }
  friend Matrix operator*(const Matrix& lhs, const Matrix& rhs);

  /// Frobenius norm.
  double norm() const;
  cplx trace() const;
  double max_abs() const;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Field field_ = Field::Real;
  std::vector<cplx> a_;
};

/// Throws PreconditionError unless both operands share a field.
Field common_field(const Matrix& a, const Matrix& b);

/// <x, y> = sum_i x_i conj(y_i) for column vectors.
cplx inner(const Matrix& x, const Matrix& y);
double norm_fro(const Matrix& m);
/// Largest singular value.
double norm_spectral(const Matrix& m);
/// Singular values in descending order.
std::vector<double> singular_values(const Matrix& m);
bool is_hermitian(const Matrix& m, const Tolerance& tol = {});

/// Orthonormal basis of the column space via Householder QR with column
/// pivoting; the numerical rank is decided by the threshold rel * |R_11|
/// (|R_11| is the largest-column proxy for sigma_max). Throws NumericError
/// if every column has norm <= abs.
Matrix orthonormalize(const Matrix& spanning, const Tolerance& tol = {});

/// Numerical rank with the same pivoted-QR threshold as orthonormalize.
std::size_t numeric_rank(const Matrix& m, const Tolerance& tol = {});

struct EigSym {
  std::vector<double> values; // ascending
  Matrix vectors;             // orthonormal columns, A = V diag(values) V*
};

/// Hermitian eigendecomposition. Throws NumericError if
/// ||A - A*|| > rel * ||A|| (Frobenius norms).
EigSym eig_sym(const Matrix& a, const Tolerance& tol = {});

/// Solve A X = B for Hermitian positive definite A by Cholesky
/// factorization; throws NumericError if a pivot is <= abs.
Matrix solve_spd(const Matrix& a, const Matrix& b, const Tolerance& tol = {});

/// Moore-Penrose pseudo-inverse via SVD with rank threshold rel * sigma_max.
Matrix pinv(const Matrix& m, const Tolerance& tol = {});

} // namespace fusion

#endif
