#include <benchmark/benchmark.h>

#include "orbitope/geometry.hpp"
#include "orbitope/hc_oracle.hpp"
#include "orbitope/mc_validate.hpp"
#include "orbitope/solver.hpp"

using namespace orbitope;

namespace {

GroupSpec spec_for(int family, int n) { return make_group_spec(static_cast<Family>(family), n); }

CartanVector ramp(const GroupSpec& spec, double lo, double hi) {
  Eigen::VectorXd v = Eigen::VectorXd::LinSpaced(spec.coord_length, lo, hi);
  if (spec.family == Family::SU) v.array() -= v.mean();
  return CartanVector(v);
}

void BM_LogIntegral(benchmark::State& state) {
  const auto spec = spec_for(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  const auto f = ramp(spec, -1.0, 2.0);
  const auto y = ramp(spec, 1.5, -0.5);
  for (auto _ : state) benchmark::DoNotOptimize(log_integral(spec, f, y, state.range(2) != 0));
  state.SetLabel(describe(spec) + (state.range(2) ? " +grad" : ""));
}
BENCHMARK(BM_LogIntegral)
    ->Args({0, 3, 0})
    ->Args({0, 3, 1})
    ->Args({0, 8, 1})
    ->Args({2, 3, 1})
    ->Args({3, 4, 1})
    ->Args({5, 4, 1});

void BM_ConfluentLogIntegral(benchmark::State& state) {
  const auto spec = make_group_spec(Family::U, static_cast<int>(state.range(0)));
  const auto f = CartanVector(Eigen::VectorXd::Constant(spec.coord_length, 0.5));
  const auto y = ramp(spec, -1.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(log_integral(spec, f, y, true));
}
BENCHMARK(BM_ConfluentLogIntegral)->Arg(3)->Arg(6);

void BM_Solve(benchmark::State& state) {
  const auto spec = spec_for(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  const auto f = ramp(spec, -0.7, 1.3);
  auto y = ramp(spec, 1.2, -0.5);
  if (spec.family == Family::U) y.coords().array() -= y.coords().mean();
  const auto g = gradient(spec, f, y);
  const ProblemInstance in{spec, f, CartanVector(Eigen::VectorXd(-g.coords())), std::nullopt, 1e-6};
  for (auto _ : state) benchmark::DoNotOptimize(solve(in));
  state.SetLabel(describe(spec));
}
BENCHMARK(BM_Solve)->Args({0, 3})->Args({2, 3})->Args({5, 3})->Unit(benchmark::kMillisecond);

void BM_Membership(benchmark::State& state) {
  const auto spec = spec_for(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  const auto f = ramp(spec, -0.7, 1.3);
  const auto a = CartanVector(Eigen::VectorXd(f.coords() * 0.3));
  for (auto _ : state) benchmark::DoNotOptimize(membership(spec, f, a));
  state.SetLabel(describe(spec));
}
BENCHMARK(BM_Membership)->Args({1, 4})->Args({3, 4})->Unit(benchmark::kMicrosecond);

void BM_HaarSample(benchmark::State& state) {
  const auto spec = spec_for(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  std::uint64_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(haar_sample(spec, 1, i++));
  state.SetLabel(describe(spec));
}
BENCHMARK(BM_HaarSample)->Args({0, 3})->Args({3, 2})->Args({5, 2});

}  // namespace
BENCHMARK_MAIN();
