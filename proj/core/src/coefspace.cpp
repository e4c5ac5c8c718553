#include "fusion/coefspace.hpp"

#include <cmath>

namespace fusion {

CoefficientArray CoefficientArray::zero(std::size_t n, std::size_t block_dim, Field field) {
  CoefficientArray c;
  c.blocks.assign(n, Matrix::zero(block_dim, 1, field));
  return c;
}

double CoefficientArray::norm() const {
  double s = 0.0;
  for (const auto& b : blocks) {
    double n = b.norm();
    s += n * n;
  }
  return std::sqrt(s);
}

Matrix CoefficientArray::stacked() const {
  if (blocks.empty()) return Matrix();
  return Matrix::vcat(blocks);
}

CoefficientArray CoefficientArray::from_stacked(const Matrix& v, std::size_t n) {
  if (!v.is_vector() || n == 0 || v.rows() % n != 0)
    throw ShapeError("from_stacked: vector length is not a multiple of the block count");
  std::size_t l = v.rows() / n;
  CoefficientArray c = zero(n, l, v.field());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < l; ++k) c.blocks[i](k, 0) = v(i * l + k, 0);
  return c;
}

CoefficientArray& CoefficientArray::operator+=(const CoefficientArray& rhs) {
  if (size() != rhs.size()) throw ShapeError("coefficient array: block count mismatch");
  for (std::size_t i = 0; i < blocks.size(); ++i) blocks[i] += rhs.blocks[i];
  return *this;
}

CoefficientArray& CoefficientArray::operator-=(const CoefficientArray& rhs) {
  if (size() != rhs.size()) throw ShapeError("coefficient array: block count mismatch");
  for (std::size_t i = 0; i < blocks.size(); ++i) blocks[i] -= rhs.blocks[i];
  return *this;
}

BlockOperator::BlockOperator(std::size_t n, std::size_t block_dim, Field field)
    : n_(n), block_dim_(block_dim), field_(field), diagonal_(true),
      grid_(n * n, Matrix::zero(block_dim, block_dim, field)) {}

BlockOperator BlockOperator::identity(std::size_t n, std::size_t block_dim, Field field) {
  BlockOperator q(n, block_dim, field);
  for (std::size_t i = 0; i < n; ++i) q.grid_[i * n + i] = Matrix::identity(block_dim, field);
  return q;
}

BlockOperator BlockOperator::block_diagonal(const std::vector<Matrix>& ops) {
  if (ops.empty()) throw ShapeError("block_diagonal: empty list");
  std::size_t l = ops.front().rows();
  for (const auto& op : ops) {
    if (op.rows() != l || op.cols() != l) throw ShapeError("block_diagonal: blocks must share a square shape");
    common_field(ops.front(), op);
  }
  BlockOperator q(ops.size(), l, ops.front().field());
  for (std::size_t i = 0; i < ops.size(); ++i) q.grid_[i * ops.size() + i] = ops[i];
  return q;
}

BlockOperator BlockOperator::coordinate_mask(std::size_t n, std::size_t block_dim, std::size_t k,
                                             Field field) {
  if (k >= n) throw ShapeError("coordinate_mask: index out of range");
  BlockOperator q(n, block_dim, field);
  q.grid_[k * n + k] = Matrix::identity(block_dim, field);
  return q;
}

BlockOperator BlockOperator::from_dense(const Matrix& dense, std::size_t n) {
  if (n == 0 || dense.rows() != dense.cols() || dense.rows() % n != 0)
    throw ShapeError("from_dense: matrix is not square with side divisible by N");
  std::size_t l = dense.rows() / n;
  BlockOperator q(n, l, dense.field());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Matrix b = Matrix::zero(l, l, dense.field());
      bool nonzero = false;
      for (std::size_t r = 0; r < l; ++r)
        for (std::size_t c = 0; c < l; ++c) {
          b(r, c) = dense(i * l + r, j * l + c);
          nonzero = nonzero || b(r, c) != cplx(0.0, 0.0);
        }
      if (i != j && nonzero) q.diagonal_ = false;
      q.grid_[i * n + j] = b;
    }
  return q;
}

void BlockOperator::set_block(std::size_t i, std::size_t j, const Matrix& b) {
  if (i >= n_ || j >= n_) throw ShapeError("set_block: index out of range");
  if (b.rows() != block_dim_ || b.cols() != block_dim_) throw ShapeError("set_block: block shape mismatch");
  common_field(grid_.front(), b);
  grid_[i * n_ + j] = b;
  if (i != j && b.norm() != 0.0) diagonal_ = false;
}

CoefficientArray BlockOperator::apply(const CoefficientArray& c) const {
  if (c.size() != n_ || c.block_dim() != block_dim_)
    throw ShapeError("apply: coefficient array shape mismatch");
  CoefficientArray out = CoefficientArray::zero(n_, block_dim_, common_field(grid_.front(), c.blocks.front()));
  for (std::size_t i = 0; i < n_; ++i) {
    if (diagonal_) {
      out.blocks[i] = block(i, i) * c.blocks[i];
      continue;
    }
    Matrix acc = Matrix::zero(block_dim_, 1, out.field());
    for (std::size_t j = 0; j < n_; ++j) acc += block(i, j) * c.blocks[j];
    out.blocks[i] = acc;
  }
  return out;
}

BlockOperator BlockOperator::adjoint() const {
  BlockOperator q(n_, block_dim_, field_);
  q.diagonal_ = diagonal_;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) q.grid_[j * n_ + i] = block(i, j).adjoint();
  return q;
}

Matrix BlockOperator::to_dense() const {
  Matrix d = Matrix::zero(n_ * block_dim_, n_ * block_dim_, field_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) {
      const Matrix& b = block(i, j);
      for (std::size_t r = 0; r < block_dim_; ++r)
        for (std::size_t c = 0; c < block_dim_; ++c) d(i * block_dim_ + r, j * block_dim_ + c) = b(r, c);
    }
  return d;
}

double BlockOperator::op_norm() const {
  if (diagonal_) {
    double m = 0.0;
    for (std::size_t i = 0; i < n_; ++i) m = std::max(m, norm_spectral(block(i, i)));
    return m;
  }
  return norm_spectral(to_dense());
}

BlockOperator operator*(const BlockOperator& a, const BlockOperator& b) {
  if (a.size() != b.size() || a.block_dim() != b.block_dim())
    throw ShapeError("block operator product: shape mismatch");
  Field f = common_field(a.block(0, 0), b.block(0, 0));
  BlockOperator out(a.size(), a.block_dim(), f);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) {
      Matrix acc = Matrix::zero(a.block_dim(), a.block_dim(), f);
      for (std::size_t k = 0; k < a.size(); ++k) acc += a.block(i, k) * b.block(k, j);
      out.set_block(i, j, acc);
    }
  return out;
}

bool is_block_diagonal(const BlockOperator& q, const Tolerance& tol) {
  double scale = std::max(q.op_norm(), tol.abs);
  for (std::size_t k = 0; k < q.size(); ++k) {
    BlockOperator mk = BlockOperator::coordinate_mask(q.size(), q.block_dim(), k, q.field());
    BlockOperator lhs = q * mk;
    BlockOperator rhs = mk * q;
    double resid = (lhs.to_dense() - rhs.to_dense()).norm();
    if (resid > tol.rel * scale * std::sqrt(static_cast<double>(q.size()))) return false;
  }
  return true;
}

bool is_component_preserving(const BlockOperator& q, const std::vector<Subspace>& v,
                             const std::vector<Subspace>& w, const Tolerance& tol) {
  if (v.size() != q.size() || w.size() != q.size())
    throw ShapeError("is_component_preserving: subspace count mismatch");
  if (!is_block_diagonal(q, tol)) return false;
  for (std::size_t k = 0; k < q.size(); ++k) {
    Matrix image = q.block(k, k) * v[k].basis();
    try {
      Subspace range = Subspace::span_of(image, tol);
      if (!subspace_equal(range, w[k], 10.0 * tol.rel)) return false;
    } catch (const NumericError&) {
      return false; // block collapses V_k, it cannot map onto W_k
    }
  }
  return true;
}

} // namespace fusion
