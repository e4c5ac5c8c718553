#include "fusion/numeric.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace fusion {

namespace {

using EigenC = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using EigenR = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Map<const EigenC> map_of(const Matrix& m) {
  static const cplx dummy{};
  const cplx* p = m.data().empty() ? &dummy : m.data().data();
  return {p, static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols())};
}

EigenR real_part(const Matrix& m) {
  EigenR r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).real();
  return r;
}

Matrix from_eigen(const EigenC& e, Field field) {
  Matrix m(e.rows(), e.cols(), field);
  for (Eigen::Index i = 0; i < e.rows(); ++i)
    for (Eigen::Index j = 0; j < e.cols(); ++j) m(i, j) = e(i, j);
  return m;
}

Matrix from_eigen(const EigenR& e) {
  Matrix m(e.rows(), e.cols(), Field::Real);
  for (Eigen::Index i = 0; i < e.rows(); ++i)
    for (Eigen::Index j = 0; j < e.cols(); ++j) m(i, j) = cplx(e(i, j), 0.0);
  return m;
}

// Multiply each column by a unit scalar so its largest-magnitude entry is
// positive real. Keeps bases deterministic across backends.
void canonicalize_columns(Matrix& q) {
  for (std::size_t j = 0; j < q.cols(); ++j) {
    std::size_t imax = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < q.rows(); ++i) {
      double a = std::abs(q(i, j));
      if (a > best) {
        best = a;
        imax = i;
      }
    }
    if (best <= 0.0) continue;
    cplx phase = q(imax, j) / best;
    cplx scale = std::conj(phase);
    for (std::size_t i = 0; i < q.rows(); ++i) q(i, j) *= scale;
  }
}

} // namespace

const char* field_name(Field f) { return f == Field::Real ? "real" : "complex"; }

Tolerance::Tolerance(double rel_, double abs_) : rel(rel_), abs(abs_) {
  if (!(rel > 0.0) || !(abs > 0.0)) throw PreconditionError("tolerance: rel and abs must be positive");
}

Matrix::Matrix(std::size_t rows, std::size_t cols, Field field)
    : rows_(rows), cols_(cols), field_(field), a_(rows * cols, cplx(0.0, 0.0)) {}

Matrix Matrix::zero(std::size_t rows, std::size_t cols, Field field) { return Matrix(rows, cols, field); }

Matrix Matrix::identity(std::size_t n, Field field) {
  Matrix m(n, n, field);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  std::size_t r = rows.size();
  std::size_t c = r == 0 ? 0 : rows.begin()->size();
  Matrix m(r, c, Field::Real);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c) throw ShapeError("from_rows: ragged row lengths");
    std::size_t j = 0;
    for (double x : row) m(i, j++) = cplx(x, 0.0);
    ++i;
  }
  return m;
}

Matrix Matrix::from_rows(Field field, std::initializer_list<std::initializer_list<cplx>> rows) {
  std::size_t r = rows.size();
  std::size_t c = r == 0 ? 0 : rows.begin()->size();
  Matrix m(r, c, field);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c) throw ShapeError("from_rows: ragged row lengths");
    std::size_t j = 0;
    for (cplx x : row) {
      if (field == Field::Real && x.imag() != 0.0)
        throw PreconditionError("from_rows: complex entry in real-tagged matrix");
      m(i, j++) = x;
    }
    ++i;
  }
  return m;
}

Matrix Matrix::column(const std::vector<double>& entries) {
  Matrix m(entries.size(), 1, Field::Real);
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, 0) = cplx(entries[i], 0.0);
  return m;
}

Matrix Matrix::column(Field field, const std::vector<cplx>& entries) {
  Matrix m(entries.size(), 1, field);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (field == Field::Real && entries[i].imag() != 0.0)
      throw PreconditionError("column: complex entry in real-tagged vector");
    m(i, 0) = entries[i];
  }
  return m;
}

Matrix Matrix::hcat(const std::vector<Matrix>& parts) {
  if (parts.empty()) throw ShapeError("hcat: empty list");
  std::size_t r = parts.front().rows();
  Field f = parts.front().field();
  std::size_t c = 0;
  for (const auto& p : parts) {
    if (p.rows() != r) throw ShapeError("hcat: row count mismatch");
    common_field(parts.front(), p);
    c += p.cols();
  }
  Matrix m(r, c, f);
  std::size_t off = 0;
  for (const auto& p : parts) {
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < p.cols(); ++j) m(i, off + j) = p(i, j);
    off += p.cols();
  }
  return m;
}

Matrix Matrix::vcat(const std::vector<Matrix>& parts) {
  if (parts.empty()) throw ShapeError("vcat: empty list");
  std::size_t c = parts.front().cols();
  Field f = parts.front().field();
  std::size_t r = 0;
  for (const auto& p : parts) {
    if (p.cols() != c) throw ShapeError("vcat: column count mismatch");
    common_field(parts.front(), p);
    r += p.rows();
  }
  Matrix m(r, c, f);
  std::size_t off = 0;
  for (const auto& p : parts) {
    for (std::size_t i = 0; i < p.rows(); ++i)
      for (std::size_t j = 0; j < c; ++j) m(off + i, j) = p(i, j);
    off += p.rows();
  }
  return m;
}

Matrix Matrix::adjoint() const {
  Matrix m(cols_, rows_, field_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
  return m;
}

Matrix Matrix::transpose() const {
  Matrix m(cols_, rows_, field_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
  return m;
}

Matrix Matrix::promoted(Field field) const {
  if (field == field_) return *this;
  if (field == Field::Real) throw PreconditionError("promoted: cannot demote complex to real");
  Matrix out(rows_, cols_, Field::Complex);
  out.data() = a_;
  return out;
}

Matrix Matrix::col(std::size_t j) const { return cols_range(j, 1); }

Matrix Matrix::cols_range(std::size_t j0, std::size_t count) const {
  if (j0 + count > cols_) throw ShapeError("cols_range: out of range");
  Matrix m(rows_, count, field_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < count; ++j) m(i, j) = (*this)(i, j0 + j);
  return m;
}

void Matrix::set_col(std::size_t j, const Matrix& v) {
  if (j >= cols_ || v.rows() != rows_ || v.cols() != 1) throw ShapeError("set_col: shape mismatch");
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v(i, 0);
}

Matrix& Matrix::operator+=(const Matrix& rhs) {
  common_field(*this, rhs);
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw ShapeError("add: shape mismatch");
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += rhs.a_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& rhs) {
  common_field(*this, rhs);
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw ShapeError("sub: shape mismatch");
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= rhs.a_[k];
  return *this;
}

Matrix& Matrix::operator*=(double s) {
  for (auto& x : a_) x *= s;
  return *this;
}

Matrix& Matrix::operator*=(cplx s) {
  if (field_ == Field::Real && s.imag() != 0.0)
    throw PreconditionError("scale: complex scalar on real-tagged matrix");
  for (auto& x : a_) x *= s;
  return *this;
}

Matrix operator*(const Matrix& lhs, const Matrix& rhs) {
  Field f = common_field(lhs, rhs);
  if (lhs.cols() != rhs.rows()) throw ShapeError("matmul: inner dimension mismatch");
  EigenC prod = map_of(lhs) * map_of(rhs);
  return from_eigen(prod, f);
}

double Matrix::norm() const {
  double s = 0.0;
  for (const auto& x : a_) s += std::norm(x);
  return std::sqrt(s);
}

cplx Matrix::trace() const {
  cplx t = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (const auto& x : a_) m = std::max(m, std::abs(x));
  return m;
}

Field common_field(const Matrix& a, const Matrix& b) {
  if (a.field() != b.field())
    throw PreconditionError(std::string("field mismatch: ") + field_name(a.field()) + " vs " +
                            field_name(b.field()));
  return a.field();
}

cplx inner(const Matrix& x, const Matrix& y) {
  common_field(x, y);
  if (!x.is_vector() || !y.is_vector() || x.rows() != y.rows()) throw ShapeError("inner: vector shape mismatch");
  cplx s = 0.0;
  for (std::size_t i = 0; i < x.rows(); ++i) s += x(i, 0) * std::conj(y(i, 0));
  return s;
}

double norm_fro(const Matrix& m) { return m.norm(); }

double norm_spectral(const Matrix& m) {
  if (m.empty()) return 0.0;
  auto a = map_of(m);
  EigenC gram = m.rows() <= m.cols() ? EigenC(a * a.adjoint()) : EigenC(a.adjoint() * a);
  Eigen::SelfAdjointEigenSolver<EigenC> es(gram, Eigen::EigenvaluesOnly);
  double lmax = es.eigenvalues().maxCoeff();
  return std::sqrt(std::max(lmax, 0.0));
}

std::vector<double> singular_values(const Matrix& m) {
  if (m.empty()) return {};
  Eigen::JacobiSVD<EigenC> svd(map_of(m));
  std::vector<double> s(svd.singularValues().data(), svd.singularValues().data() + svd.singularValues().size());
  return s;
}

bool is_hermitian(const Matrix& m, const Tolerance& tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).norm() <= tol.rel * m.norm();
}

namespace {

template <class Mat>
Matrix qr_orthonormal(const Mat& a, Field field, const Tolerance& tol, std::size_t* rank_out) {
  Eigen::ColPivHouseholderQR<Mat> qr(a);
  auto rdiag = qr.matrixR().diagonal();
  double r0 = std::abs(rdiag(0));
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < rdiag.size(); ++i)
    if (std::abs(rdiag(i)) > tol.rel * r0) ++rank;
  if (rank_out) {
    *rank_out = rank;
    return Matrix();
  }
  Mat thin = qr.householderQ() * Mat::Identity(a.rows(), static_cast<Eigen::Index>(rank));
  Matrix q(thin.rows(), thin.cols(), field);
  for (Eigen::Index i = 0; i < thin.rows(); ++i)
    for (Eigen::Index j = 0; j < thin.cols(); ++j) q(i, j) = thin(i, j);
  canonicalize_columns(q);
  return q;
}

double max_column_norm(const Matrix& m) {
  double best = 0.0;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) s += std::norm(m(i, j));
    best = std::max(best, std::sqrt(s));
  }
  return best;
}

} // namespace

Matrix orthonormalize(const Matrix& spanning, const Tolerance& tol) {
  if (spanning.cols() == 0 || spanning.rows() == 0) throw ShapeError("orthonormalize: empty input");
  if (max_column_norm(spanning) <= tol.abs)
    throw NumericError("all_zero: every column has norm <= abs tolerance");
  if (spanning.field() == Field::Real)
    return qr_orthonormal<Eigen::MatrixXd>(real_part(spanning), Field::Real, tol, nullptr);
  return qr_orthonormal<Eigen::MatrixXcd>(map_of(spanning), Field::Complex, tol, nullptr);
}

std::size_t numeric_rank(const Matrix& m, const Tolerance& tol) {
  if (m.cols() == 0 || m.rows() == 0) return 0;
  if (max_column_norm(m) <= tol.abs) return 0;
  std::size_t rank = 0;
  if (m.field() == Field::Real)
    qr_orthonormal<Eigen::MatrixXd>(real_part(m), Field::Real, tol, &rank);
  else
    qr_orthonormal<Eigen::MatrixXcd>(map_of(m), Field::Complex, tol, &rank);
  return rank;
}

EigSym eig_sym(const Matrix& a, const Tolerance& tol) {
  if (a.rows() != a.cols()) throw ShapeError("eig_sym: matrix not square");
  if ((a - a.adjoint()).norm() > tol.rel * a.norm())
    throw NumericError("not_hermitian: ||A - A*|| > rel * ||A||");
  EigSym out;
  if (a.field() == Field::Real) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(real_part(a));
    out.values.assign(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    Eigen::MatrixXd v = es.eigenvectors();
    out.vectors = Matrix(v.rows(), v.cols(), Field::Real);
    for (Eigen::Index i = 0; i < v.rows(); ++i)
      for (Eigen::Index j = 0; j < v.cols(); ++j) out.vectors(i, j) = cplx(v(i, j), 0.0);
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(Eigen::MatrixXcd(map_of(a)));
    out.values.assign(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    Eigen::MatrixXcd v = es.eigenvectors();
    out.vectors = Matrix(v.rows(), v.cols(), Field::Complex);
    for (Eigen::Index i = 0; i < v.rows(); ++i)
      for (Eigen::Index j = 0; j < v.cols(); ++j) out.vectors(i, j) = v(i, j);
  }
  canonicalize_columns(out.vectors);
  return out;
}

Matrix solve_spd(const Matrix& a, const Matrix& b, const Tolerance& tol) {
  if (a.rows() != a.cols()) throw ShapeError("solve_spd: matrix not square");
  if (b.rows() != a.rows()) throw ShapeError("solve_spd: right-hand side row mismatch");
  common_field(a, b);
  if ((a - a.adjoint()).norm() > tol.rel * a.norm())
    throw NumericError("not_hermitian: ||A - A*|| > rel * ||A||");
  const std::size_t n = a.rows();
  Matrix l = Matrix::zero(n, n, a.field());
  for (std::size_t j = 0; j < n; ++j) {
    double d = a(j, j).real();
    for (std::size_t k = 0; k < j; ++k) d -= std::norm(l(j, k));
    if (d <= tol.abs) throw NumericError("not_positive_definite: Cholesky pivot <= abs tolerance");
    double ljj = std::sqrt(d);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      cplx s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * std::conj(l(j, k));
      l(i, j) = s / ljj;
    }
  }
  // forward substitution L y = b, then back substitution L* x = y
  Matrix x = b;
  for (std::size_t c = 0; c < b.cols(); ++c) {
    for (std::size_t i = 0; i < n; ++i) {
      cplx s = x(i, c);
      for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * x(k, c);
      x(i, c) = s / l(i, i).real();
    }
    for (std::size_t ii = n; ii-- > 0;) {
      cplx s = x(ii, c);
      for (std::size_t k = ii + 1; k < n; ++k) s -= std::conj(l(k, ii)) * x(k, c);
      x(ii, c) = s / l(ii, ii).real();
    }
  }
  return x;
}

namespace {

template <class Mat>
Matrix pinv_impl(const Mat& a, Field field, const Tolerance& tol) {
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  double smax = s.size() ? s(0) : 0.0;
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > tol.rel * smax && s(i) > 0.0) ++rank;
  Matrix out = Matrix::zero(a.cols(), a.rows(), field);
  if (rank == 0) return out;
  Mat p = svd.matrixV().leftCols(rank) * s.head(rank).cwiseInverse().asDiagonal() *
          svd.matrixU().leftCols(rank).adjoint();
  for (Eigen::Index i = 0; i < p.rows(); ++i)
    for (Eigen::Index j = 0; j < p.cols(); ++j) out(i, j) = p(i, j);
  return out;
}

} // namespace

Matrix pinv(const Matrix& m, const Tolerance& tol) {
  if (m.empty()) return Matrix::zero(m.cols(), m.rows(), m.field());
  if (m.field() == Field::Real) return pinv_impl<Eigen::MatrixXd>(real_part(m), Field::Real, tol);
  return pinv_impl<Eigen::MatrixXcd>(Eigen::MatrixXcd(map_of(m)), Field::Complex, tol);
}

} // namespace fusion
