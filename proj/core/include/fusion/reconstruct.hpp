#ifndef FUSION_RECONSTRUCT_HPP
#define FUSION_RECONSTRUCT_HPP

#include <cstddef>
#include <vector>

#include "fusion/frame.hpp"

namespace fusion {

struct IterationTrace {
  std::vector<double> errors;   // errors[n] = ||f - g_n||, errors[0] = ||f||
  std::vector<Matrix> iterates; // g_1, g_2, ... when requested
  double rate_bound = 0.0;      // (B - A) / (B + A)
  std::size_t iterations = 0;
  bool converged = false;
  Matrix result;
};

struct FrameAlgorithmOptions {
  std::size_t max_iterations = 10000;
  double target_eps = 1e-8; // relative to ||f||
  bool store_iterates = false;
};

/// Perfect reconstruction S_V^{-1} S_V f, with S_V f evaluated through the
/// analysis/synthesis path and the inverse through Cholesky.
Matrix reconstruct_exact(const FusionFrame& v, const Matrix& f, const Tolerance& tol = {});

/// Richardson iteration g_n = g_{n-1} + 2/(A+B) S_V (f - g_{n-1}), g_0 = 0,
/// with the guaranteed error bound ||f - g_n|| <= ((B-A)/(B+A))^n ||f||.
/// The caller may pass valid non-optimal bounds (A <= A_opt, B >= B_opt).
/// Throws PreconditionError for A <= 0 or A > B.
IterationTrace frame_algorithm(const FusionFrame& v, const Matrix& f, FrameBounds bounds,
                               const FrameAlgorithmOptions& opts = {}, const Tolerance& tol = {});

/// Condition number of S_V: ratio of the optimal bounds.
double condition_number(const FusionFrame& v, const Tolerance& tol = {});

} // namespace fusion

#endif
