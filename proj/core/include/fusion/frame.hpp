#ifndef FUSION_FRAME_HPP
#define FUSION_FRAME_HPP

#include <vector>

#include "fusion/coefspace.hpp"
#include "fusion/numeric.hpp"
#include "fusion/subspace.hpp"

namespace fusion {

struct WeightedSubspace {
  Subspace subspace;
  double weight = 1.0;
};

struct FrameBounds {
  double lower = 0.0;
  double upper = 0.0;

  double condition() const;
};

/// Ordered family (V_i, v_i) of weighted subspaces of a common ambient
/// space. The fusion frame operator S_V = sum v_i^2 pi_{V_i} is cached at
/// construction; the object is immutable afterwards.
class FusionFrame {
public:
  explicit FusionFrame(std::vector<WeightedSubspace> components);

  std::size_t size() const { return components_.size(); }
  std::size_t ambient_dim() const { return components_.front().subspace.ambient_dim(); }
  Field field() const { return components_.front().subspace.field(); }
  const std::vector<WeightedSubspace>& components() const { return components_; }
  const WeightedSubspace& operator[](std::size_t i) const { return components_[i]; }
  const Matrix& frame_operator() const { return frame_op_; }

  std::vector<Subspace> subspaces() const;
  std::vector<double> weights() const;

private:
  std::vector<WeightedSubspace> components_;
  Matrix frame_op_;
};

/// Convenience constructor from spanning sets with unit weights.
FusionFrame frame_from_spans(const std::vector<Matrix>& spans, const std::vector<double>& weights = {},
                             const Tolerance& tol = {});

/// C_V f = (v_i pi_{V_i} f)_i.
CoefficientArray analysis(const FusionFrame& v, const Matrix& f);
/// D_V c = sum_i v_i pi_{V_i} c_i.
Matrix synthesis(const FusionFrame& v, const CoefficientArray& c);
/// Dense NL x L matrix of C_V (stacked v_i pi_{V_i}).
Matrix analysis_matrix(const FusionFrame& v);
/// Dense L x NL matrix of D_V; equals analysis_matrix(v).adjoint().
Matrix synthesis_matrix(const FusionFrame& v);

/// Optimal bounds: the extreme eigenvalues of S_V.
FrameBounds bounds(const FusionFrame& v);

struct Classification {
  bool is_fusion_frame = false;
  bool is_tight = false;
  bool is_parseval = false;
  bool is_onb_fusion_basis = false;
  bool is_riesz_basis = false;
  bool is_exact = false;
  bool is_minimal = false;
};

Classification classify(const FusionFrame& v, const Tolerance& tol = {});

/// Rank-based fusion frame test (span of the union equals the ambient
/// space), decoupled from the conditioning of S_V.
bool is_fusion_frame(const FusionFrame& v, const Tolerance& tol = {});

struct TransformedFrame {
  FusionFrame frame;
  /// Bounds guaranteed by the invertible-operator theorem:
  /// A ||U^-1||^-2 ||U||^-2 and B ||U^-1||^2 ||U||^2.
  FrameBounds guaranteed;
};

/// (U V_i, v_i) for invertible U.
TransformedFrame transform(const FusionFrame& v, const Matrix& u, const Tolerance& tol = {});

struct RieszFactorization {
  Matrix op;                              // invertible L x L
  std::vector<Subspace> orthonormal_basis; // pairwise orthogonal, op maps E_i onto V_i
};

/// Factor a fusion Riesz basis as V_i = U E_i with E an orthonormal fusion
/// basis: U is the synthesis matrix of the global Riesz basis (v_i e_ij)
/// against the coordinate partition. Throws PreconditionError otherwise.
RieszFactorization riesz_factorization(const FusionFrame& v, const Tolerance& tol = {});

/// (S_V^{-1/2} V_i, 1)_i; an orthonormal fusion basis whenever the input is
/// a fusion Riesz basis. Weights are reset to 1.
FusionFrame sqrt_inverse_transform(const FusionFrame& v, const Tolerance& tol = {});

} // namespace fusion

#endif
