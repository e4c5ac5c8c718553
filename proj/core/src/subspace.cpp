#include "fusion/subspace.hpp"

namespace fusion {

Subspace Subspace::span_of(const Matrix& spanning, const Tolerance& tol) {
  return Subspace(orthonormalize(spanning, tol));
}

Subspace Subspace::from_orthonormal(Matrix basis, const Tolerance& tol) {
  if (basis.cols() == 0) throw NumericError("all_zero: zero subspace rejected");
  Matrix gram = basis.adjoint() * basis;
  if ((gram - Matrix::identity(basis.cols(), basis.field())).norm() > 10.0 * tol.rel)
    throw PreconditionError("from_orthonormal: columns are not orthonormal within tolerance");
  return Subspace(std::move(basis));
}

Matrix Subspace::projector() const { return basis_ * basis_.adjoint(); }

Matrix Subspace::project(const Matrix& f) const {
  if (!f.is_vector() || f.rows() != ambient_dim())
    throw ShapeError("project: vector dimension does not match ambient dimension");
  common_field(basis_, f);
  return basis_ * (basis_.adjoint() * f);
}

Matrix Subspace::project_matrix(const Matrix& m) const {
  if (m.rows() != ambient_dim()) throw ShapeError("project_matrix: row dimension mismatch");
  common_field(basis_, m);
  return basis_ * (basis_.adjoint() * m);
}

bool Subspace::contains(const Matrix& v, double tol) const {
  Matrix r = v - project(v);
  return r.norm() <= tol * std::max(1.0, v.norm());
}

Subspace span_union(const std::vector<Subspace>& subspaces, const Tolerance& tol) {
  if (subspaces.empty()) throw ShapeError("span_union: empty list");
  std::vector<Matrix> bases;
  bases.reserve(subspaces.size());
  for (const auto& s : subspaces) {
    if (s.ambient_dim() != subspaces.front().ambient_dim())
      throw ShapeError("span_union: ambient dimension mismatch");
    bases.push_back(s.basis());
  }
  return Subspace::span_of(Matrix::hcat(bases), tol);
}

Subspace apply_operator(const Matrix& u, const Subspace& s, const Tolerance& tol) {
  if (u.rows() != u.cols() || u.rows() != s.ambient_dim())
    throw ShapeError("apply_operator: operator shape does not match ambient dimension");
  if (numeric_rank(u, tol) < u.rows())
    throw NumericError("singular_operator: numerical rank of U is below ambient dimension");
  return Subspace::span_of(u * s.basis(), tol);
}

bool minimal_family(const std::vector<Subspace>& subspaces, const Tolerance& tol) {
  if (subspaces.size() < 2) throw PreconditionError("minimal_family: needs at least two subspaces");
  for (std::size_t i = 0; i < subspaces.size(); ++i) {
    std::vector<Matrix> others;
    for (std::size_t j = 0; j < subspaces.size(); ++j)
      if (j != i) others.push_back(subspaces[j].basis());
    Matrix rest = Matrix::hcat(others);
    std::size_t rank_rest = numeric_rank(rest, tol);
    std::size_t rank_all = numeric_rank(Matrix::hcat({rest, subspaces[i].basis()}), tol);
    if (rank_all != rank_rest + subspaces[i].dim()) return false;
  }
  return true;
}

double projector_distance(const Subspace& a, const Subspace& b) {
  return norm_spectral(a.projector() - b.projector());
}

bool subspace_equal(const Subspace& a, const Subspace& b, double tol) {
  if (a.ambient_dim() != b.ambient_dim() || a.dim() != b.dim()) return false;
  return projector_distance(a, b) <= tol;
}

} // namespace fusion
