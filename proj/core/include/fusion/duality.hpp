#ifndef FUSION_DUALITY_HPP
#define FUSION_DUALITY_HPP

#include <vector>

#include "fusion/frame.hpp"

namespace fusion {

/// Result of checking D_W Q C_V = I. The relation is symmetric through the
/// adjoint: W is a Q-dual of V iff V is a Q*-dual of W, so the certificate
/// reports both residuals (spectral norms).
struct QDualCertificate {
  double residual = 0.0;         // ||D_W Q C_V - I||
  double reverse_residual = 0.0; // ||D_V Q* C_W - I||
  double tol = 0.0;

  bool valid() const { return residual <= tol; }
};

struct DualFrame {
  FusionFrame frame;
  BlockOperator q;
  QDualCertificate certificate;
};

/// Canonical dual (S_V^{-1} V_i, w_i) with Q = (+) (v_i/w_i) S_V^{-1} pi_{V_i}.
/// Weights default to those of V.
DualFrame canonical_dual(const FusionFrame& v, std::vector<double> weights = {}, const Tolerance& tol = {});

QDualCertificate verify_q_dual(const FusionFrame& v, const FusionFrame& w, const BlockOperator& q,
                               const Tolerance& tol = {});

/// Block-diagonal dual check: evaluates sum_i v_i w_i pi_{W_i} Q_i pi_{V_i}
/// directly; agrees with verify_q_dual on block_diagonal(qs).
QDualCertificate verify_block_dual(const FusionFrame& v, const FusionFrame& w, const std::vector<Matrix>& qs,
                                   const Tolerance& tol = {});

struct LeftInverse {
  Matrix matrix;    // L x NL with matrix * C_V = I
  Matrix free_part; // the L of the parametrization
};

/// S_V^{-1} D_V + L (I - C_V S_V^{-1} D_V) for a free L x NL part.
LeftInverse left_inverse(const FusionFrame& v, const Matrix& l_free, const Tolerance& tol = {});
/// C_V S_V^{-1} + (I - C_V S_V^{-1} D_V) R for a free NL x L part.
Matrix right_inverse(const FusionFrame& v, const Matrix& r_free, const Tolerance& tol = {});

/// Component-preserving dual from a bounded left inverse of C_V:
/// W_i = L M_i (K_V^2) and Q = (+) (1/w_i) L_i with [L_i] the block row of L.
/// Throws NumericError if some W_i collapses to the zero subspace.
DualFrame cp_dual_from_left_inverse(const FusionFrame& v, const LeftInverse& linv,
                                    const std::vector<double>& weights, const Tolerance& tol = {});

/// Identity-Q duals (D_W C_V = I): builds the candidate blocks
/// T_i = v_i S^{-1} P_i + L_i - (sum_k L_k v_k P_k) v_i S^{-1} P_i and factors
/// each as w_i * (orthogonal projector). Throws NumericError if some T_i is
/// not a scaled projector (non-Hermitian, spread or negative eigenvalues) or
/// collapses to zero.
FusionFrame identity_q_dual(const FusionFrame& v, const std::vector<Matrix>& ls, const Tolerance& tol = {});

/// Canonical dual fusion frame coefficients C_V S_V^{-1} f; these have
/// minimal norm among all c with D_V c = f.
CoefficientArray dual_coefficients(const FusionFrame& v, const Matrix& f, const Tolerance& tol = {});

/// For a fusion Riesz basis V and a valid block-diagonal dual (W, qs):
/// verifies S_V^{-1} V_i subset of W_i for every i, with equality whenever W
/// is itself a fusion Riesz basis.
bool riesz_block_dual_check(const FusionFrame& v, const FusionFrame& w, const std::vector<Matrix>& qs,
                            const Tolerance& tol = {});

} // namespace fusion

#endif
