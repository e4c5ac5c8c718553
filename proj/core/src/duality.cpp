#include "fusion/duality.hpp"

#include <cmath>

namespace fusion {

namespace {

void require_fusion_frame(const FusionFrame& v, const Tolerance& tol, const char* who) {
  if (!is_fusion_frame(v, tol))
    throw PreconditionError(std::string("not_fusion_frame: ") + who + " needs a fusion frame");
}

Matrix inverse_frame_operator(const FusionFrame& v, const Tolerance& tol) {
  return solve_spd(v.frame_operator(), Matrix::identity(v.ambient_dim(), v.field()), tol);
}

// sum_i w_i pi_{W_i} ( sum_j Q_ij v_j pi_{V_j} )
Matrix composite(const FusionFrame& v, const FusionFrame& w, const BlockOperator& q) {
  const std::size_t l = v.ambient_dim();
  Field f = common_field(v.frame_operator(), w.frame_operator());
  common_field(v.frame_operator(), q.block(0, 0));
  std::vector<Matrix> weighted_v;
  weighted_v.reserve(v.size());
  for (const auto& c : v.components()) weighted_v.push_back(c.weight * c.subspace.projector());
  Matrix total = Matrix::zero(l, l, f);
  for (std::size_t i = 0; i < w.size(); ++i) {
    Matrix acc = Matrix::zero(l, l, f);
    if (q.diagonal_flag()) {
      acc = q.block(i, i) * weighted_v[i];
    } else {
      for (std::size_t j = 0; j < v.size(); ++j) acc += q.block(i, j) * weighted_v[j];
    }
    total += w[i].weight * w[i].subspace.project_matrix(acc);
  }
  return total;
}

} // namespace

DualFrame canonical_dual(const FusionFrame& v, std::vector<double> weights, const Tolerance& tol) {
  require_fusion_frame(v, tol, "canonical_dual");
  if (weights.empty()) weights = v.weights();
  if (weights.size() != v.size()) throw ShapeError("canonical_dual: weight count mismatch");
  for (double w : weights)
    if (!(w > 0.0)) throw PreconditionError("canonical_dual: weights must be positive");
  Matrix sinv = inverse_frame_operator(v, tol);
  std::vector<WeightedSubspace> comps;
  std::vector<Matrix> qblocks;
  comps.reserve(v.size());
  qblocks.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    comps.push_back({Subspace::span_of(sinv * v[i].subspace.basis(), tol), weights[i]});
    qblocks.push_back((v[i].weight / weights[i]) * (sinv * v[i].subspace.projector()));
  }
  FusionFrame dual(std::move(comps));
  BlockOperator q = BlockOperator::block_diagonal(qblocks);
  QDualCertificate cert = verify_q_dual(v, dual, q, tol);
  return {std::move(dual), std::move(q), cert};
}

QDualCertificate verify_q_dual(const FusionFrame& v, const FusionFrame& w, const BlockOperator& q,
                               const Tolerance& tol) {
  if (v.size() != w.size() || q.size() != v.size()) throw ShapeError("verify_q_dual: component count mismatch");
  if (v.ambient_dim() != w.ambient_dim() || q.block_dim() != v.ambient_dim())
    throw ShapeError("verify_q_dual: ambient dimension mismatch");
  Matrix id = Matrix::identity(v.ambient_dim(), v.field());
  QDualCertificate cert;
  cert.tol = tol.rel;
  cert.residual = norm_spectral(composite(v, w, q) - id);
  cert.reverse_residual = norm_spectral(composite(w, v, q.adjoint()) - id);
  return cert;
}

QDualCertificate verify_block_dual(const FusionFrame& v, const FusionFrame& w, const std::vector<Matrix>& qs,
                                   const Tolerance& tol) {
  if (qs.size() != v.size()) throw ShapeError("verify_block_dual: block count mismatch");
  for (const auto& qi : qs)
    if (qi.rows() != v.ambient_dim() || qi.cols() != v.ambient_dim())
      throw ShapeError("verify_block_dual: block shape mismatch");
  return verify_q_dual(v, w, BlockOperator::block_diagonal(qs), tol);
}

LeftInverse left_inverse(const FusionFrame& v, const Matrix& l_free, const Tolerance& tol) {
  require_fusion_frame(v, tol, "left_inverse");
  const std::size_t l = v.ambient_dim();
  const std::size_t nl = l * v.size();
  if (l_free.rows() != l || l_free.cols() != nl)
    throw ShapeError("left_inverse: free part must be L x NL");
  Matrix d = synthesis_matrix(v);
  Matrix sinv_d = solve_spd(v.frame_operator(), d, tol);
  Matrix range_proj = d.adjoint() * sinv_d; // C_V S^{-1} D_V
  return {sinv_d + l_free - l_free * range_proj, l_free};
}

Matrix right_inverse(const FusionFrame& v, const Matrix& r_free, const Tolerance& tol) {
  require_fusion_frame(v, tol, "right_inverse");
  const std::size_t l = v.ambient_dim();
  const std::size_t nl = l * v.size();
  if (r_free.rows() != nl || r_free.cols() != l)
    throw ShapeError("right_inverse: free part must be NL x L");
  Matrix d = synthesis_matrix(v);
  Matrix sinv_d = solve_spd(v.frame_operator(), d, tol);
  Matrix range_proj = d.adjoint() * sinv_d;
  return sinv_d.adjoint() + r_free - range_proj * r_free;
}

DualFrame cp_dual_from_left_inverse(const FusionFrame& v, const LeftInverse& linv,
                                    const std::vector<double>& weights, const Tolerance& tol) {
  require_fusion_frame(v, tol, "cp_dual_from_left_inverse");
  if (weights.size() != v.size()) throw ShapeError("cp_dual_from_left_inverse: weight count mismatch");
  for (double w : weights)
    if (!(w > 0.0)) throw PreconditionError("cp_dual_from_left_inverse: weights must be positive");
  const std::size_t l = v.ambient_dim();
  if (linv.matrix.rows() != l || linv.matrix.cols() != l * v.size())
    throw ShapeError("cp_dual_from_left_inverse: left inverse must be L x NL");
  std::vector<WeightedSubspace> comps;
  std::vector<Matrix> qblocks;
  for (std::size_t i = 0; i < v.size(); ++i) {
    Matrix li = linv.matrix.cols_range(i * l, l);
    try {
      comps.push_back({Subspace::span_of(li * v[i].subspace.basis(), tol), weights[i]});
    } catch (const NumericError&) {
      throw NumericError("degenerate_subspace: left-inverse block collapses a component to zero");
    }
    qblocks.push_back((1.0 / weights[i]) * li);
  }
  FusionFrame dual(std::move(comps));
  BlockOperator q = BlockOperator::block_diagonal(qblocks);
  QDualCertificate cert = verify_q_dual(v, dual, q, tol);
  return {std::move(dual), std::move(q), cert};
}

FusionFrame identity_q_dual(const FusionFrame& v, const std::vector<Matrix>& ls, const Tolerance& tol) {
  require_fusion_frame(v, tol, "identity_q_dual");
  if (ls.size() != v.size()) throw ShapeError("identity_q_dual: need one L_i per component");
  const std::size_t l = v.ambient_dim();
  for (const auto& li : ls)
    if (li.rows() != l || li.cols() != l) throw ShapeError("identity_q_dual: blocks must be L x L");
  Matrix sinv = inverse_frame_operator(v, tol);
  Matrix mix = Matrix::zero(l, l, v.field()); // sum_k L_k v_k pi_{V_k}
  for (std::size_t k = 0; k < v.size(); ++k) mix += v[k].weight * (ls[k] * v[k].subspace.projector());
  std::vector<WeightedSubspace> comps;
  for (std::size_t i = 0; i < v.size(); ++i) {
    Matrix canon = v[i].weight * (sinv * v[i].subspace.projector());
    Matrix t = canon + ls[i] - mix * canon;
    double tnorm = norm_spectral(t);
    if (tnorm <= tol.abs)
      throw NumericError("not_scaled_projector: candidate block vanishes (zero subspaces disallowed)");
    if ((t - t.adjoint()).norm() > tol.rel * t.norm() * 10.0)
      throw NumericError("not_scaled_projector: candidate block is not Hermitian");
    EigSym es = eig_sym(0.5 * (t + t.adjoint()), tol);
    double lmax = es.values.back();
    std::vector<std::size_t> cluster;
    for (std::size_t k = 0; k < es.values.size(); ++k) {
      double lambda = es.values[k];
      if (lambda < -tol.rel * lmax)
        throw NumericError("not_scaled_projector: candidate block has a negative eigenvalue");
      if (lambda <= tol.rel * lmax) continue;
      if (lambda < (1.0 - 100.0 * tol.rel) * lmax)
        throw NumericError("not_scaled_projector: nonzero eigenvalues are not all equal");
      cluster.push_back(k);
    }
    double weight = 0.0;
    std::vector<Matrix> vecs;
    for (std::size_t k : cluster) {
      weight += es.values[k];
      vecs.push_back(es.vectors.col(k));
    }
    weight /= static_cast<double>(cluster.size());
    comps.push_back({Subspace::from_orthonormal(Matrix::hcat(vecs), tol), weight});
  }
  FusionFrame dual(std::move(comps));
  // By the left-inverse parametrization the duality D_W C_V = I is automatic
  // once every block factors; this guards against a bad factorization.
  Matrix check = Matrix::zero(l, l, v.field());
  for (std::size_t i = 0; i < v.size(); ++i)
    check += (v[i].weight * dual[i].weight) * (dual[i].subspace.projector() * v[i].subspace.projector());
  double resid = norm_spectral(check - Matrix::identity(l, v.field()));
  if (resid > 1000.0 * tol.rel)
    throw NumericError("not_scaled_projector: factorization failed the duality identity");
  return dual;
}

CoefficientArray dual_coefficients(const FusionFrame& v, const Matrix& f, const Tolerance& tol) {
  require_fusion_frame(v, tol, "dual_coefficients");
  return analysis(v, solve_spd(v.frame_operator(), f, tol));
}

bool riesz_block_dual_check(const FusionFrame& v, const FusionFrame& w, const std::vector<Matrix>& qs,
                            const Tolerance& tol) {
  if (!classify(v, tol).is_riesz_basis)
    throw PreconditionError("precondition_failed: riesz_block_dual_check needs a fusion Riesz basis");
  QDualCertificate cert = verify_block_dual(v, w, qs, tol);
  if (!cert.valid())
    throw PreconditionError("precondition_failed: (W, Q) is not a valid block-diagonal dual");
  Matrix sinv = inverse_frame_operator(v, tol);
  bool riesz_w = classify(w, tol).is_riesz_basis;
  for (std::size_t i = 0; i < v.size(); ++i) {
    Subspace canon = Subspace::span_of(sinv * v[i].subspace.basis(), tol);
    Matrix outside = canon.basis() - w[i].subspace.project_matrix(canon.basis());
    if (norm_spectral(outside) > 100.0 * tol.rel) return false; // containment fails
    if (riesz_w && !subspace_equal(canon, w[i].subspace, 100.0 * tol.rel)) return false;
  }
  return true;
}

} // namespace fusion
