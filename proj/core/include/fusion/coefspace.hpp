#ifndef FUSION_COEFSPACE_HPP
#define FUSION_COEFSPACE_HPP

#include <vector>

#include "fusion/numeric.hpp"
#include "fusion/subspace.hpp"

namespace fusion {

/// Element of the coefficient space K_H^2: N stacked ambient vectors.
struct CoefficientArray {
  std::vector<Matrix> blocks; // each block_dim x 1, one shared field

  static CoefficientArray zero(std::size_t n, std::size_t block_dim, Field field);

  std::size_t size() const { return blocks.size(); }
  std::size_t block_dim() const { return blocks.empty() ? 0 : blocks.front().rows(); }
  Field field() const { return blocks.empty() ? Field::Real : blocks.front().field(); }

  /// ||c||^2 = sum_i ||c_i||^2.
  double norm() const;
  /// Single NL x 1 column (block i at offset i*L).
  Matrix stacked() const;
  static CoefficientArray from_stacked(const Matrix& v, std::size_t n);

  CoefficientArray& operator+=(const CoefficientArray& rhs);
  CoefficientArray& operator-=(const CoefficientArray& rhs);
  friend CoefficientArray operator+(CoefficientArray a, const CoefficientArray& b) { return a += b; }
  friend CoefficientArray operator-(CoefficientArray a, const CoefficientArray& b) { return a -= b; }
};

/// Operator on K_H^2 stored as an N x N grid of L x L blocks. The grid is
/// the canonical matrix representation, so structure predicates are exact;
/// a dense export is provided for verification.
class BlockOperator {
public:
  BlockOperator(std::size_t n, std::size_t block_dim, Field field);

  static BlockOperator identity(std::size_t n, std::size_t block_dim, Field field = Field::Real);
  /// Diagonal grid from per-component operators.
  static BlockOperator block_diagonal(const std::vector<Matrix>& ops);
  /// M_k: identity at diagonal slot k (0-based), zero elsewhere.
  static BlockOperator coordinate_mask(std::size_t n, std::size_t block_dim, std::size_t k,
                                       Field field = Field::Real);
  static BlockOperator from_dense(const Matrix& dense, std::size_t n);

  std::size_t size() const { return n_; }
  std::size_t block_dim() const { return block_dim_; }
  Field field() const { return field_; }
  bool diagonal_flag() const { return diagonal_; }

  const Matrix& block(std::size_t i, std::size_t j) const { return grid_[i * n_ + j]; }
  void set_block(std::size_t i, std::size_t j, const Matrix& b);

  CoefficientArray apply(const CoefficientArray& c) const;
  BlockOperator adjoint() const;
  Matrix to_dense() const;
  /// Operator norm; for diagonal grids this is max_i ||Q_i||.
  double op_norm() const;

  friend BlockOperator operator*(const BlockOperator& a, const BlockOperator& b);

private:
  std::size_t n_ = 0;
  std::size_t block_dim_ = 0;
  Field field_ = Field::Real;
  bool diagonal_ = true;
  std::vector<Matrix> grid_;
};

/// Q M_k = M_k Q for every k, within tol (true block-diagonal structure).
bool is_block_diagonal(const BlockOperator& q, const Tolerance& tol = {});

/// Block-diagonal and the k-th block maps V_k onto W_k (range equality of
/// Q_k restricted to V_k, checked via projectors).
bool is_component_preserving(const BlockOperator& q, const std::vector<Subspace>& v,
                             const std::vector<Subspace>& w, const Tolerance& tol = {});

} // namespace fusion

#endif
