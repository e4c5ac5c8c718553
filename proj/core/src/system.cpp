#include "fusion/system.hpp"

#include <algorithm>
#include <cmath>

namespace fusion {

LocalFrame make_local_frame(const Matrix& synthesis, const Tolerance& tol) {
  Subspace s = Subspace::span_of(synthesis, tol);
  EigSym es = eig_sym(synthesis * synthesis.adjoint(), tol);
  double lmax = es.values.back();
  double lmin = lmax;
  for (double lambda : es.values)
    if (lambda > tol.rel * lmax) lmin = std::min(lmin, lambda);
  return {std::move(s), synthesis, FrameBounds{lmin, lmax}};
}

FusionFrameSystem::FusionFrameSystem(FusionFrame frame, std::vector<LocalFrame> locals)
    : frame_(std::move(frame)), locals_(std::move(locals)) {
  if (locals_.size() != frame_.size())
    throw ShapeError("fusion frame system: one local frame per component required");
  for (std::size_t i = 0; i < locals_.size(); ++i) {
    if (!subspace_equal(locals_[i].subspace, frame_[i].subspace, 1e-8))
      throw PreconditionError("fusion frame system: local frame does not span its component");
    if (!(locals_[i].bounds.lower > 0.0))
      throw PreconditionError("fusion frame system: local lower bounds must be positive");
  }
}

FrameBounds FusionFrameSystem::local_bound_envelope() const {
  FrameBounds env{locals_.front().bounds.lower, locals_.front().bounds.upper};
  for (const auto& lf : locals_) {
    env.lower = std::min(env.lower, lf.bounds.lower);
    env.upper = std::max(env.upper, lf.bounds.upper);
  }
  return env;
}

FusionFrameSystem make_system(const std::vector<Matrix>& local_syntheses,
                              const std::vector<double>& weights, const Tolerance& tol) {
  if (local_syntheses.empty()) throw ShapeError("make_system: empty list");
  if (!weights.empty() && weights.size() != local_syntheses.size())
    throw ShapeError("make_system: weight count mismatch");
  std::vector<LocalFrame> locals;
  std::vector<WeightedSubspace> comps;
  locals.reserve(local_syntheses.size());
  for (std::size_t i = 0; i < local_syntheses.size(); ++i) {
    locals.push_back(make_local_frame(local_syntheses[i], tol));
    comps.push_back({locals.back().subspace, weights.empty() ? 1.0 : weights[i]});
  }
  return {FusionFrame(std::move(comps)), std::move(locals)};
}

Matrix global_frame(const FusionFrameSystem& sys) {
  std::vector<Matrix> parts;
  parts.reserve(sys.size());
  for (std::size_t i = 0; i < sys.size(); ++i)
    parts.push_back(sys.frame()[i].weight * sys.locals()[i].synthesis);
  return Matrix::hcat(parts);
}

FrameBounds vector_frame_bounds(const Matrix& synthesis) {
  EigSym es = eig_sym(synthesis * synthesis.adjoint());
  return {std::max(es.values.front(), 0.0), es.values.back()};
}

std::vector<LocalFrame> local_canonical_duals(const FusionFrameSystem& sys, const Tolerance& tol) {
  std::vector<LocalFrame> duals;
  duals.reserve(sys.size());
  for (const auto& lf : sys.locals()) {
    Matrix s_local = lf.synthesis * lf.synthesis.adjoint();
    Matrix dual_synth = pinv(s_local, tol) * lf.synthesis;
    duals.push_back(make_local_frame(dual_synth, tol));
  }
  return duals;
}

Matrix fusion_operator_via_locals(const FusionFrameSystem& sys, const Tolerance& tol) {
  std::vector<LocalFrame> duals = local_canonical_duals(sys, tol);
  const std::size_t l = sys.ambient_dim();
  Matrix op = Matrix::zero(l, l, sys.frame().field());
  for (std::size_t i = 0; i < sys.size(); ++i) {
    double w2 = sys.frame()[i].weight * sys.frame()[i].weight;
    op += w2 * (duals[i].synthesis * sys.locals()[i].synthesis.adjoint());
  }
  double resid = norm_spectral(op - sys.frame().frame_operator());
  if (resid > 1e-8 * std::max(1.0, norm_spectral(sys.frame().frame_operator())))
    throw NumericError("fusion_operator_via_locals: local route disagrees with the frame operator");
  return op;
}

DualSystemReport is_dual_system(const FusionFrameSystem& sys_v, const FusionFrameSystem& sys_w,
                                const Tolerance& tol) {
  if (sys_v.size() != sys_w.size()) throw ShapeError("is_dual_system: component count mismatch");
  for (std::size_t i = 0; i < sys_v.size(); ++i)
    if (sys_v.locals()[i].synthesis.cols() != sys_w.locals()[i].synthesis.cols())
      throw ShapeError("local_size_mismatch: |K_i| must equal |J_i| for every component");
  std::vector<Matrix> qblocks;
  qblocks.reserve(sys_v.size());
  for (std::size_t i = 0; i < sys_v.size(); ++i)
    qblocks.push_back(sys_w.locals()[i].synthesis * sys_v.locals()[i].synthesis.adjoint());
  BlockOperator q = BlockOperator::block_diagonal(qblocks);
  QDualCertificate cert = verify_q_dual(sys_v.frame(), sys_w.frame(), q, tol);
  Matrix gv = global_frame(sys_v);
  Matrix gw = global_frame(sys_w);
  const std::size_t l = sys_v.ambient_dim();
  double global_resid = norm_spectral(gw * gv.adjoint() - Matrix::identity(l, gv.field()));
  if (std::abs(global_resid - cert.residual) > 10.0 * tol.rel)
    throw NumericError("is_dual_system: Q-route and global-route residuals disagree");
  return {cert, global_resid, std::move(q)};
}

} // namespace fusion
