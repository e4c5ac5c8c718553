#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fusion/io.hpp"
#include "fusion/reconstruct.hpp"
#include "helpers.hpp"

#include <cstdio>

using namespace fusion;
using namespace testutil;

TEST_CASE("exact reconstruction") {
  FusionFrame parseval = frame_from_spans({unit(3, 0), unit(3, 1), unit(3, 2)});
  Matrix f = vec({1, -2, 3});
  CHECK((reconstruct_exact(parseval, f) - f).norm() < 1e-13);

  FusionFrame v = r3_self_dual();
  Matrix g = vec({1, 2, 3});
  CHECK((reconstruct_exact(v, g) - g).norm() < 1e-10);

  // tight frame: f = (1/A) sum v_i^2 pi_i f
  FusionFrame gav = gavruta_v();
  Matrix h = vec({0.3, -0.7, 1.1});
  Matrix sum = Matrix::zero(3, 1, Field::Real);
  for (const auto& c : gav.components()) sum += (c.weight * c.weight) * c.subspace.project(h);
  CHECK((0.5 * sum - h).norm() < 1e-12);
  CHECK((reconstruct_exact(gav, h) - h).norm() < 1e-12);

  FusionFrame deficient = frame_from_spans({unit(3, 0), unit(3, 0)});
  CHECK_THROWS_AS(reconstruct_exact(deficient, f), PreconditionError);
}

TEST_CASE("frame algorithm on a tight frame converges in one step") {
  FusionFrame gav = gavruta_v();
  Matrix f = vec({1, 2, 3});
  IterationTrace trace = frame_algorithm(gav, f, bounds(gav));
  CHECK(trace.rate_bound == doctest::Approx(0.0));
  CHECK(trace.converged);
  CHECK(trace.iterations == 1);
  CHECK((trace.result - f).norm() < 1e-12);
}

TEST_CASE("frame algorithm error follows the explicit diagonal recursion") {
  FusionFrame v = exact_not_riesz(); // S_V = diag(1, 2, 1)
  Matrix f = vec({1, 1, 1});
  IterationTrace trace = frame_algorithm(v, f, FrameBounds{1.0, 2.0},
                                         {.max_iterations = 40, .target_eps = 1e-12});
  // relaxation 2/3 scales the error components by (1/3, -1/3, 1/3) each step
  for (std::size_t n = 0; n < trace.errors.size(); ++n) {
    double expect = std::pow(1.0 / 3.0, double(n)) * f.norm();
    CHECK(trace.errors[n] == doctest::Approx(expect).epsilon(1e-9));
  }
  CHECK(trace.converged);
}

TEST_CASE("frame algorithm respects the guaranteed bound at every step") {
  auto rng = make_rng(113);
  FusionFrame v = random_fusion_frame(rng, 12, 5, Field::Real);
  Matrix f = random_vector(rng, 12, Field::Real);
  FrameBounds b = bounds(v);
  double rate = (b.upper - b.lower) / (b.upper + b.lower);
  auto predicted = [](double r) {
    return r <= 0.0 ? std::size_t{1}
                    : static_cast<std::size_t>(std::ceil(std::log(1e-8) / std::log(r))) + 1;
  };
  IterationTrace trace =
      frame_algorithm(v, f, b, {.max_iterations = predicted(rate), .store_iterates = true});
  CHECK(trace.converged);
  CHECK(trace.iterates.size() == trace.iterations);
  double fnorm = f.norm();
  for (std::size_t n = 0; n < trace.errors.size(); ++n)
    CHECK(trace.errors[n] <= std::pow(trace.rate_bound, double(n)) * fnorm + 1e-12);

  // doubling B is a valid non-optimal bound; convergence degrades but holds
  FrameBounds loose{b.lower, 2.0 * b.upper};
  double loose_rate = (loose.upper - loose.lower) / (loose.upper + loose.lower);
  IterationTrace slack = frame_algorithm(v, f, loose, {.max_iterations = predicted(loose_rate)});
  CHECK(slack.converged);
  CHECK(slack.iterations >= trace.iterations);
  for (std::size_t n = 0; n < slack.errors.size(); ++n)
    CHECK(slack.errors[n] <= std::pow(slack.rate_bound, double(n)) * fnorm + 1e-12);
}

TEST_CASE("random uniform frame at the survey scale decays log-linearly") {
  auto rng = make_rng(127);
  // L = 105, N = 8, random local dimensions in [L/4, 3L/4]
  std::vector<WeightedSubspace> comps;
  std::uniform_int_distribution<std::size_t> dim(26, 79);
  Matrix u = random_invertible(rng, 105, Field::Real);
  std::size_t offset = 0;
  for (std::size_t i = 0; i < 4; ++i) { // partition guarantees the span
    std::size_t d = 105 / 4 + (i < 105 % 4 ? 1 : 0);
    comps.push_back({Subspace::span_of(u.cols_range(offset, d)), 1.0});
    offset += d;
  }
  while (comps.size() < 8) comps.push_back({random_subspace(rng, 105, dim(rng), Field::Real), 1.0});
  FusionFrame v(std::move(comps));
  Matrix f = random_vector(rng, 105, Field::Real);
  IterationTrace trace = frame_algorithm(v, f, bounds(v), {.max_iterations = 100000});
  CHECK(trace.converged);
  for (std::size_t n = 1; n < trace.errors.size(); ++n)
    CHECK(trace.errors[n] <= trace.errors[n - 1] + 1e-15); // monotone decay
}

TEST_CASE("condition numbers") {
  FusionFrame parseval = frame_from_spans({unit(2, 0), unit(2, 1)});
  CHECK(condition_number(parseval) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(condition_number(r3_self_dual()) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(condition_number(gavruta_v()) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("invalid bounds are rejected") {
  FusionFrame v = r3_self_dual();
  Matrix f = vec({1, 0, 0});
  CHECK_THROWS_AS(frame_algorithm(v, f, FrameBounds{0.0, 2.0}), PreconditionError);
  CHECK_THROWS_AS(frame_algorithm(v, f, FrameBounds{3.0, 2.0}), PreconditionError);
}

TEST_CASE("trace export") {
  FusionFrame v = exact_not_riesz();
  IterationTrace trace = frame_algorithm(v, vec({1, 1, 1}), FrameBounds{1.0, 2.0},
                                         {.max_iterations = 10, .target_eps = 1e-30});
  std::string path = "trace_test.csv";
  write_trace_csv(path, trace);
  Matrix back = read_csv_matrix(path);
  REQUIRE(back.rows() == trace.errors.size());
  REQUIRE(back.cols() == 3);
  for (std::size_t n = 0; n < trace.errors.size(); ++n) {
    CHECK(back(n, 0).real() == doctest::Approx(double(n)));
    CHECK(back(n, 1).real() == doctest::Approx(trace.errors[n]).epsilon(1e-14));
    CHECK(back(n, 2).real() ==
          doctest::Approx(std::pow(trace.rate_bound, double(n)) * trace.errors[0]).epsilon(1e-12));
  }
  std::remove(path.c_str());
}
