#include <benchmark/benchmark.h>

#include <random>

#include "fusion/duality.hpp"
#include "fusion/reconstruct.hpp"
#include "fusion/tf.hpp"

namespace {

using namespace fusion;

FusionFrame random_frame(std::size_t l, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::vector<WeightedSubspace> comps;
  for (std::size_t i = 0; i < n; ++i) {
    Matrix span(l, 1 + i % (l / 2), Field::Real);
    for (auto& x : span.data()) x = cplx(uni(rng), 0.0);
    comps.push_back({Subspace::span_of(span), 1.0});
  }
  // guarantee the span by appending the full space
  comps.push_back({Subspace::span_of(Matrix::identity(l)), 1.0});
  return FusionFrame(std::move(comps));
}

void BM_FrameOperator(benchmark::State& state) {
  std::size_t l = state.range(0);
  FusionFrame v = random_frame(l, 8, 7);
  std::vector<WeightedSubspace> comps(v.components());
  for (auto _ : state) {
    FusionFrame rebuilt(comps);
    benchmark::DoNotOptimize(rebuilt.frame_operator());
  }
}
BENCHMARK(BM_FrameOperator)->Arg(32)->Arg(64)->Arg(128);

void BM_Bounds(benchmark::State& state) {
  FusionFrame v = random_frame(state.range(0), 8, 7);
  for (auto _ : state) benchmark::DoNotOptimize(bounds(v));
}
BENCHMARK(BM_Bounds)->Arg(32)->Arg(64)->Arg(128);

void BM_CanonicalDual(benchmark::State& state) {
  FusionFrame v = random_frame(state.range(0), 6, 11);
  for (auto _ : state) benchmark::DoNotOptimize(canonical_dual(v));
}
BENCHMARK(BM_CanonicalDual)->Arg(16)->Arg(32)->Arg(64);

void BM_Richardson(benchmark::State& state) {
  std::size_t l = state.range(0);
  FusionFrame v = random_frame(l, 8, 13);
  FrameBounds b = bounds(v);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  Matrix f(l, 1, Field::Real);
  for (auto& x : f.data()) x = cplx(uni(rng), 0.0);
  for (auto _ : state) benchmark::DoNotOptimize(frame_algorithm(v, f, b));
}
BENCHMARK(BM_Richardson)->Arg(32)->Arg(64)->Arg(105);

void BM_GaborBuild(benchmark::State& state) {
  std::size_t l = state.range(0);
  Matrix g = gaussian_window(l, 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(gabor_system(l, l / 24, l / 8, g));
}
BENCHMARK(BM_GaborBuild)->Arg(96)->Arg(192)->Arg(384);

void BM_SolveSpd(benchmark::State& state) {
  std::size_t l = state.range(0);
  FusionFrame v = random_frame(l, 8, 17);
  Matrix id = Matrix::identity(l);
  for (auto _ : state) benchmark::DoNotOptimize(solve_spd(v.frame_operator(), id));
}
BENCHMARK(BM_SolveSpd)->Arg(32)->Arg(64)->Arg(128);

} // namespace

BENCHMARK_MAIN();
