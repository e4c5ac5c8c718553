#include "fusion/reconstruct.hpp"

#include <cmath>

namespace fusion {

Matrix reconstruct_exact(const FusionFrame& v, const Matrix& f, const Tolerance& tol) {
  if (!is_fusion_frame(v, tol))
    throw PreconditionError("not_fusion_frame: reconstruct_exact needs a fusion frame");
  Matrix sf = synthesis(v, analysis(v, f));
  return solve_spd(v.frame_operator(), sf, tol);
}

IterationTrace frame_algorithm(const FusionFrame& v, const Matrix& f, FrameBounds bounds,
                               const FrameAlgorithmOptions& opts, const Tolerance& tol) {
  if (!(bounds.lower > 0.0) || bounds.lower > bounds.upper)
    throw PreconditionError("invalid_bounds: need 0 < A <= B");
  if (!f.is_vector() || f.rows() != v.ambient_dim())
    throw ShapeError("frame_algorithm: vector dimension mismatch");
  IterationTrace trace;
  trace.rate_bound = (bounds.upper - bounds.lower) / (bounds.upper + bounds.lower);
  const double relax = 2.0 / (bounds.lower + bounds.upper);
  const double fnorm = f.norm();
  const Matrix& s = v.frame_operator();
  Matrix g = Matrix::zero(f.rows(), 1, f.field());
  trace.errors.push_back(fnorm);
  double err = fnorm;
  while (trace.iterations < opts.max_iterations) {
    g += relax * (s * (f - g));
    ++trace.iterations;
    err = (f - g).norm();
    trace.errors.push_back(err);
    if (opts.store_iterates) trace.iterates.push_back(g);
    if (err <= opts.target_eps * std::max(fnorm, tol.abs)) {
      trace.converged = true;
      break;
    }
  }
  trace.result = g;
  return trace;
}

double condition_number(const FusionFrame& v, const Tolerance& tol) {
  if (!is_fusion_frame(v, tol))
    throw PreconditionError("not_fusion_frame: condition_number needs a fusion frame");
  FrameBounds b = bounds(v);
  return b.upper / b.lower;
}

} // namespace fusion
