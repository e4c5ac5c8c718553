#ifndef FUSION_TEST_HELPERS_HPP
#define FUSION_TEST_HELPERS_HPP

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "fusion/duality.hpp"
#include "fusion/frame.hpp"
#include "fusion/system.hpp"

namespace testutil {

using namespace fusion;

inline Matrix vec(const std::vector<double>& entries) { return Matrix::column(entries); }

inline Matrix unit(std::size_t l, std::size_t k, Field field = Field::Real) {
  Matrix e = Matrix::zero(l, 1, field);
  e(k, 0) = 1.0;
  return e;
}

/// Independent oracle: classical Gram-Schmidt without pivoting, used to
/// freeze expected bases and projectors in tests.
inline Matrix gram_schmidt(const Matrix& a, double drop_tol = 1e-12) {
  std::vector<Matrix> basis;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    Matrix v = a.col(j);
    for (const auto& q : basis) v -= inner(v, q) * q.promoted(v.field());
    if (v.norm() > drop_tol) basis.push_back((1.0 / v.norm()) * v);
  }
  return Matrix::hcat(basis);
}

inline std::mt19937_64 make_rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline Matrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, Field field) {
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  Matrix m(r, c, field);
  for (auto& x : m.data()) x = field == Field::Real ? cplx(uni(rng), 0.0) : cplx(uni(rng), uni(rng));
  return m;
}

inline Matrix random_vector(std::mt19937_64& rng, std::size_t n, Field field) {
  return random_matrix(rng, n, 1, field);
}

/// Well conditioned invertible operator Q1 diag(0.5 .. 2) Q2.
inline Matrix random_invertible(std::mt19937_64& rng, std::size_t n, Field field) {
  Matrix q1 = orthonormalize(random_matrix(rng, n, n, field));
  Matrix q2 = orthonormalize(random_matrix(rng, n, n, field));
  std::uniform_real_distribution<double> uni(0.5, 2.0);
  Matrix d = Matrix::zero(n, n, field);
  for (std::size_t i = 0; i < n; ++i) d(i, i) = uni(rng);
  return q1 * d * q2;
}

inline Subspace random_subspace(std::mt19937_64& rng, std::size_t l, std::size_t d, Field field) {
  return Subspace::span_of(random_matrix(rng, l, d, field));
}

/// Random fusion frame whose first components partition the columns of an
/// invertible operator, so the union always spans.
inline FusionFrame random_fusion_frame(std::mt19937_64& rng, std::size_t l, std::size_t n, Field field) {
  std::uniform_real_distribution<double> wdist(0.5, 2.0);
  std::uniform_int_distribution<std::size_t> extra_dim(1, std::max<std::size_t>(1, l / 2));
  Matrix u = random_invertible(rng, l, field);
  std::size_t base = std::min(n, l);
  std::vector<WeightedSubspace> comps;
  std::size_t offset = 0;
  for (std::size_t i = 0; i < base; ++i) {
    std::size_t dim = l / base + (i < l % base ? 1 : 0);
    comps.push_back({Subspace::span_of(u.cols_range(offset, dim)), wdist(rng)});
    offset += dim;
  }
  while (comps.size() < n)
    comps.push_back({random_subspace(rng, l, extra_dim(rng), field), wdist(rng)});
  return FusionFrame(std::move(comps));
}

/// Random fusion Riesz basis: an exact dimension partition of an invertible
/// image of the coordinate basis.
inline FusionFrame random_riesz_basis(std::mt19937_64& rng, std::size_t l, std::size_t n, Field field) {
  std::uniform_real_distribution<double> wdist(0.5, 2.0);
  Matrix u = random_invertible(rng, l, field);
  std::vector<WeightedSubspace> comps;
  std::size_t offset = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t dim = l / n + (i < l % n ? 1 : 0);
    comps.push_back({Subspace::span_of(u.cols_range(offset, dim)), wdist(rng)});
    offset += dim;
  }
  return FusionFrame(std::move(comps));
}

// ---- worked matrix examples ------------------------------------------------

/// R^3 self-dual example: V1 = span(e2,e3), V2 = span(e1,e3), weights 1,
/// S_V = diag(1,1,2).
inline FusionFrame r3_self_dual() {
  return frame_from_spans({Matrix::from_rows({{0, 0}, {1, 0}, {0, 1}}),
                           Matrix::from_rows({{1, 0}, {0, 0}, {0, 1}})});
}

/// R^4 canonical-dual example with S_V = (1/2)[[2,0,0,0],[0,4,0,0],
/// [0,0,5,-1],[0,0,-1,3]].
inline FusionFrame r4_canonical_example() {
  return frame_from_spans({Matrix::from_rows({{1, 0, 0}, {0, 1, 0}, {0, 0, -1}, {0, 0, 1}}),
                           Matrix::from_rows({{0, 0}, {1, 0}, {0, 1}, {0, 0}}),
                           Matrix::from_rows({{0, 0}, {0, 0}, {1, 0}, {0, 1}})});
}

/// Six coordinate lines of R^3 with weights 1 (S_V = 2 I).
inline FusionFrame gavruta_v() {
  std::vector<Matrix> spans;
  for (std::size_t k : {0, 1, 2, 1, 0, 2}) spans.push_back(unit(3, k));
  return frame_from_spans(spans);
}

/// Companion frame with weights 2 (S_W = 8 I).
inline FusionFrame gavruta_w() {
  std::vector<Matrix> spans;
  for (std::size_t k : {0, 1, 2, 2, 1, 0}) spans.push_back(unit(3, k));
  return frame_from_spans(spans, std::vector<double>(6, 2.0));
}

/// C^4 frame that is never Parseval under any invertible image and weights:
/// V1 = span(e1,e2), V2 = span(e1,e3), V3 = span(e4).
inline FusionFrame parsevalex_c4() {
  Field f = Field::Complex;
  return frame_from_spans({Matrix::hcat({unit(4, 0, f), unit(4, 1, f)}),
                           Matrix::hcat({unit(4, 0, f), unit(4, 2, f)}), unit(4, 3, f)});
}

/// Exact-but-not-Riesz example {span(e1,e2), span(e2,e3)} in R^3.
inline FusionFrame exact_not_riesz() {
  return frame_from_spans({Matrix::from_rows({{1, 0}, {0, 1}, {0, 0}}),
                           Matrix::from_rows({{0, 0}, {1, 0}, {0, 1}})});
}

/// C^4 fusion Riesz basis V1 = {(x1,x2,0,0)}, V2 = {(0,x2,x3,-x2)} with its
/// printed block-diagonal dual system (phi, psi): global dual frame pair.
struct RieszDualExample {
  FusionFrame v;
  FusionFrame w;
  std::vector<Matrix> phi; // local frames of V
  std::vector<Matrix> psi; // local frames of W
};

inline RieszDualExample riesz_dual_example() {
  Field f = Field::Complex;
  Matrix phi1 = Matrix::from_rows(f, {{1, 0, 1}, {0, 1, 0}, {0, 0, 0}, {0, 0, 0}});
  Matrix phi2 = Matrix::from_rows(f, {{0, 0, 0}, {1, 0, 0}, {0, 1, 1}, {-1, 0, 0}});
  Matrix psi1 = Matrix::from_rows(f, {{0.5, 0, 0.5}, {0.5, 1, -0.5}, {-0.5, 0, 0.5}, {0, 1, 0}});
  Matrix psi2 = Matrix::from_rows(f, {{0, 0.5, -0.5}, {0, -0.5, 0.5}, {0, 0.5, 0.5}, {-1, 0, 0}});
  return {frame_from_spans({phi1, phi2}), frame_from_spans({psi1, psi2}), {phi1, phi2}, {psi1, psi2}};
}

/// Composite test signal: Gaussian-windowed uniform noise in (0,1), a
/// sinusoid at bin L/8, and an impulse of value 2 at samples 320..325.
inline Matrix composite_signal(std::size_t l, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  Matrix f(l, 1, Field::Real);
  double center = (static_cast<double>(l) - 1.0) / 2.0;
  double sigma = static_cast<double>(l) / 8.0;
  for (std::size_t k = 0; k < l; ++k) {
    double t = static_cast<double>(k);
    double window = std::exp(-0.5 * (t - center) * (t - center) / (sigma * sigma));
    double sine = std::sin(2.0 * std::numbers::pi * (static_cast<double>(l) / 8.0) * t / static_cast<double>(l));
    f(k, 0) = window * uni(rng) + sine;
  }
  for (std::size_t k = 320; k <= 325 && k < l; ++k) f(k, 0) += 2.0;
  return f;
}

inline double rel_error(const Matrix& got, const Matrix& want) {
  double scale = std::max(want.norm(), 1e-300);
  return (got - want).norm() / scale;
}

} // namespace testutil

#endif
