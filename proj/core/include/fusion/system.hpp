#ifndef FUSION_SYSTEM_HPP
#define FUSION_SYSTEM_HPP

#include <vector>

#include "fusion/duality.hpp"
#include "fusion/frame.hpp"

namespace fusion {

/// A frame (phi_ik)_k for one subspace, stored through its L x K_i
/// synthesis matrix. Bounds are those of the frame sequence: the extreme
/// nonzero eigenvalues of D D^*, with the zero spectrum from the orthogonal
/// complement excluded at threshold rel * lambda_max.
struct LocalFrame {
  Subspace subspace;
  Matrix synthesis;
  FrameBounds bounds;
};

LocalFrame make_local_frame(const Matrix& synthesis, const Tolerance& tol = {});

/// Fusion frame together with one local frame per component.
class FusionFrameSystem {
public:
  FusionFrameSystem(FusionFrame frame, std::vector<LocalFrame> locals);

  const FusionFrame& frame() const { return frame_; }
  const std::vector<LocalFrame>& locals() const { return locals_; }
  std::size_t size() const { return locals_.size(); }
  std::size_t ambient_dim() const { return frame_.ambient_dim(); }

  /// inf A_i and sup B_i over the local frames.
  FrameBounds local_bound_envelope() const;

private:
  FusionFrame frame_;
  std::vector<LocalFrame> locals_;
};

/// Build the system from local synthesis matrices: subspace i is the column
/// space of the i-th matrix.
FusionFrameSystem make_system(const std::vector<Matrix>& local_syntheses,
                              const std::vector<double>& weights = {}, const Tolerance& tol = {});

/// Synthesis matrix of the global family (v_i phi_ij): weighted local
/// synthesis matrices side by side.
Matrix global_frame(const FusionFrameSystem& sys);

/// Optimal bounds of a vector family as a frame for the whole space
/// (extreme eigenvalues of D D^*, zero included).
FrameBounds vector_frame_bounds(const Matrix& synthesis);

/// Local canonical duals phi~_ik = S_{phi(i)}^+ phi_ik computed with the
/// subspace-restricted inverse; the projection identity
/// pi_{V_i} f = sum_k <f, phi_ik> phi~_ik holds.
std::vector<LocalFrame> local_canonical_duals(const FusionFrameSystem& sys, const Tolerance& tol = {});

/// D_{v phi^d} C_{v phi}; asserted equal to the cached fusion frame
/// operator within tolerance.
Matrix fusion_operator_via_locals(const FusionFrameSystem& sys, const Tolerance& tol = {});

struct DualSystemReport {
  QDualCertificate certificate; // via Q = (+) D_{psi(i)} C_{phi(i)}
  double global_residual = 0.0; // || D_{w psi} C_{v phi} - I ||
  BlockOperator q;
};

/// Dual fusion frame system check. Requires |K_i| = |J_i| per index
/// (throws ShapeError otherwise); the Q-route and the global-route
/// residuals must agree within 10 * tol.
DualSystemReport is_dual_system(const FusionFrameSystem& sys_v, const FusionFrameSystem& sys_w,
                                const Tolerance& tol = {});

} // namespace fusion

#endif
