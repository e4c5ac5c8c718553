#include "fusion/frame.hpp"

#include <cmath>

namespace fusion {

double FrameBounds::condition() const {
  if (lower <= 0.0) throw PreconditionError("condition: lower bound is not positive");
  return upper / lower;
}

FusionFrame::FusionFrame(std::vector<WeightedSubspace> components) : components_(std::move(components)) {
  if (components_.empty()) throw ShapeError("fusion frame: needs at least one component");
  const auto& first = components_.front().subspace;
  for (const auto& c : components_) {
    if (c.subspace.ambient_dim() != first.ambient_dim())
      throw ShapeError("fusion frame: components share no common ambient dimension");
    if (c.subspace.field() != first.field())
      throw PreconditionError("fusion frame: components share no common field");
    if (!(c.weight > 0.0)) throw PreconditionError("fusion frame: weights must be positive");
  }
  frame_op_ = Matrix::zero(first.ambient_dim(), first.ambient_dim(), first.field());
  for (const auto& c : components_) frame_op_ += (c.weight * c.weight) * c.subspace.projector();
}

std::vector<Subspace> FusionFrame::subspaces() const {
  std::vector<Subspace> out;
  out.reserve(size());
  for (const auto& c : components_) out.push_back(c.subspace);
  return out;
}

std::vector<double> FusionFrame::weights() const {
  std::vector<double> out;
  out.reserve(size());
  for (const auto& c : components_) out.push_back(c.weight);
  return out;
}

FusionFrame frame_from_spans(const std::vector<Matrix>& spans, const std::vector<double>& weights,
                             const Tolerance& tol) {
  if (!weights.empty() && weights.size() != spans.size())
    throw ShapeError("frame_from_spans: weight count mismatch");
  std::vector<WeightedSubspace> comps;
  comps.reserve(spans.size());
  for (std::size_t i = 0; i < spans.size(); ++i)
    comps.push_back({Subspace::span_of(spans[i], tol), weights.empty() ? 1.0 : weights[i]});
  return FusionFrame(std::move(comps));
}

CoefficientArray analysis(const FusionFrame& v, const Matrix& f) {
  if (!f.is_vector() || f.rows() != v.ambient_dim())
    throw ShapeError("analysis: vector dimension does not match ambient dimension");
  CoefficientArray c;
  c.blocks.reserve(v.size());
  for (const auto& comp : v.components()) c.blocks.push_back(comp.weight * comp.subspace.project(f));
  return c;
}

Matrix synthesis(const FusionFrame& v, const CoefficientArray& c) {
  if (c.size() != v.size()) throw ShapeError("synthesis: block count mismatch");
  if (c.block_dim() != v.ambient_dim()) throw ShapeError("synthesis: block dimension mismatch");
  Matrix out = Matrix::zero(v.ambient_dim(), 1, common_field(v.frame_operator(), c.blocks.front()));
  for (std::size_t i = 0; i < v.size(); ++i)
    out += v[i].weight * v[i].subspace.project(c.blocks[i]);
  return out;
}

Matrix analysis_matrix(const FusionFrame& v) {
  std::vector<Matrix> rows;
  rows.reserve(v.size());
  for (const auto& comp : v.components()) rows.push_back(comp.weight * comp.subspace.projector());
  return Matrix::vcat(rows);
}

Matrix synthesis_matrix(const FusionFrame& v) { return analysis_matrix(v).adjoint(); }

FrameBounds bounds(const FusionFrame& v) {
  EigSym es = eig_sym(v.frame_operator());
  return {es.values.front(), es.values.back()};
}

bool is_fusion_frame(const FusionFrame& v, const Tolerance& tol) {
  std::vector<Matrix> bases;
  bases.reserve(v.size());
  for (const auto& c : v.components()) bases.push_back(c.subspace.basis());
  return numeric_rank(Matrix::hcat(bases), tol) == v.ambient_dim();
}

namespace {

bool leave_one_out_spans(const FusionFrame& v, std::size_t skip, const Tolerance& tol) {
  std::vector<Matrix> bases;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (i != skip) bases.push_back(v[i].subspace.basis());
  if (bases.empty()) return false;
  return numeric_rank(Matrix::hcat(bases), tol) == v.ambient_dim();
}

// ||P_i P_j|| equals ||B_i^* B_j|| since the bases are isometries.
bool pairwise_orthogonal(const FusionFrame& v, const Tolerance& tol) {
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      double overlap = norm_spectral(v[i].subspace.basis().adjoint() * v[j].subspace.basis());
      if (overlap > tol.rel) return false;
    }
  return true;
}

} // namespace

Classification classify(const FusionFrame& v, const Tolerance& tol) {
  Classification out;
  out.is_fusion_frame = is_fusion_frame(v, tol);
  FrameBounds b = bounds(v);
  out.is_tight = (b.upper - b.lower) <= tol.rel * b.upper;
  out.is_parseval =
      norm_spectral(v.frame_operator() - Matrix::identity(v.ambient_dim(), v.field())) <= tol.rel;
  std::size_t dim_sum = 0;
  for (const auto& c : v.components()) dim_sum += c.subspace.dim();
  out.is_riesz_basis = out.is_fusion_frame && dim_sum == v.ambient_dim();
  bool unit_weights = true;
  for (const auto& c : v.components()) unit_weights = unit_weights && std::abs(c.weight - 1.0) <= tol.rel;
  out.is_onb_fusion_basis = unit_weights && out.is_parseval && pairwise_orthogonal(v, tol);
  out.is_exact = out.is_fusion_frame;
  for (std::size_t i = 0; out.is_exact && i < v.size(); ++i)
    if (leave_one_out_spans(v, i, tol)) out.is_exact = false;
  out.is_minimal = v.size() < 2 || minimal_family(v.subspaces(), tol);
  return out;
}

TransformedFrame transform(const FusionFrame& v, const Matrix& u, const Tolerance& tol) {
  if (u.rows() != u.cols() || u.rows() != v.ambient_dim())
    throw ShapeError("transform: operator shape does not match ambient dimension");
  std::vector<double> sv = singular_values(u);
  if (sv.empty() || sv.back() <= tol.rel * sv.front())
    throw NumericError("singular_operator: U is not invertible within tolerance");
  double norm_u = sv.front();
  double norm_u_inv = 1.0 / sv.back();
  std::vector<WeightedSubspace> comps;
  comps.reserve(v.size());
  for (const auto& c : v.components())
    comps.push_back({Subspace::span_of(u * c.subspace.basis(), tol), c.weight});
  FrameBounds b = bounds(v);
  double expand = norm_u_inv * norm_u_inv * norm_u * norm_u;
  return {FusionFrame(std::move(comps)), FrameBounds{b.lower / expand, b.upper * expand}};
}

RieszFactorization riesz_factorization(const FusionFrame& v, const Tolerance& tol) {
  if (!classify(v, tol).is_riesz_basis)
    throw PreconditionError("not_riesz_basis: riesz_factorization needs a fusion Riesz basis");
  const std::size_t l = v.ambient_dim();
  Matrix u = Matrix::zero(l, l, v.field());
  std::vector<Subspace> basis;
  std::size_t offset = 0;
  for (const auto& c : v.components()) {
    const Matrix& b = c.subspace.basis();
    Matrix coords = Matrix::zero(l, c.subspace.dim(), v.field());
    for (std::size_t j = 0; j < c.subspace.dim(); ++j) {
      u.set_col(offset + j, c.weight * b.col(j));
      coords(offset + j, j) = 1.0;
    }
    basis.push_back(Subspace::from_orthonormal(coords, tol));
    offset += c.subspace.dim();
  }
  return {u, basis};
}

FusionFrame sqrt_inverse_transform(const FusionFrame& v, const Tolerance& tol) {
  if (!is_fusion_frame(v, tol))
    throw PreconditionError("not_fusion_frame: sqrt_inverse_transform needs a fusion frame");
  EigSym es = eig_sym(v.frame_operator(), tol);
  Matrix scaled = es.vectors;
  for (std::size_t j = 0; j < scaled.cols(); ++j) {
    double lambda = es.values[j];
    if (lambda <= tol.abs)
      throw PreconditionError("not_fusion_frame: frame operator is numerically singular");
    Matrix col = (1.0 / std::sqrt(lambda)) * es.vectors.col(j);
    scaled.set_col(j, col);
  }
  Matrix inv_sqrt = scaled * es.vectors.adjoint();
  std::vector<WeightedSubspace> comps;
  comps.reserve(v.size());
  for (const auto& c : v.components())
    comps.push_back({Subspace::span_of(inv_sqrt * c.subspace.basis(), tol), 1.0});
  return FusionFrame(std::move(comps));
}

} // namespace fusion
