#ifndef FUSION_SUBSPACE_HPP
#define FUSION_SUBSPACE_HPP

#include <vector>

#include "fusion/numeric.hpp"

namespace fusion {

/// A non-zero closed subspace of F^L, stored as an L x d matrix with
/// orthonormal columns. Subspaces are canonicalized at construction;
/// equality is tested through projector distance, never basis equality.
class Subspace {
public:
  /// Orthonormalize a spanning set. Throws NumericError if the span is
  /// numerically zero (zero subspaces are rejected).
  static Subspace span_of(const Matrix& spanning, const Tolerance& tol = {});
  /// Adopt an already orthonormal basis; validated within tol.
  static Subspace from_orthonormal(Matrix basis, const Tolerance& tol = {});

  std::size_t ambient_dim() const { return basis_.rows(); }
  std::size_t dim() const { return basis_.cols(); }
  Field field() const { return basis_.field(); }
  const Matrix& basis() const { return basis_; }

  /// Orthogonal projection matrix basis * basis^*.
  Matrix projector() const;
  /// pi_S f for a column vector f of matching dimension.
  Matrix project(const Matrix& f) const;
  /// pi_S applied to every column, computed as basis (basis^* m).
  Matrix project_matrix(const Matrix& m) const;
  bool contains(const Matrix& v, double tol) const;

private:
  explicit Subspace(Matrix basis) : basis_(std::move(basis)) {}
  Matrix basis_;
};

/// Orthonormal basis of span(union of the given subspaces).
Subspace span_union(const std::vector<Subspace>& subspaces, const Tolerance& tol = {});

/// Image U S of a subspace under an invertible operator, re-orthonormalized.
/// Throws NumericError if U is numerically singular.
Subspace apply_operator(const Matrix& u, const Subspace& s, const Tolerance& tol = {});

/// True iff each subspace intersects the span of the others trivially,
/// decided by rank counts of concatenated bases.
bool minimal_family(const std::vector<Subspace>& subspaces, const Tolerance& tol = {});

/// Spectral norm of the projector difference.
double projector_distance(const Subspace& a, const Subspace& b);
bool subspace_equal(const Subspace& a, const Subspace& b, double tol);

} // namespace fusion

#endif
