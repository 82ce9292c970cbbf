#include <benchmark/benchmark.h>

#include "lafed/cohomology.hpp"
#include "lafed/comparison.hpp"
#include "lafed/fedosov.hpp"
#include "lafed/fixtures.hpp"
#include "lafed/homotopy.hpp"
#include "lafed/jets.hpp"
#include "lafed/quantize.hpp"
#include "lafed/sampling.hpp"

using namespace lafed;
using namespace lafed::sampling;

static void BM_PolyMul(benchmark::State& state) {
  Rng rng(1);
  const int deg = static_cast<int>(state.range(0));
  Poly a = rand_poly(rng, 3, deg, 12), b = rand_poly(rng, 3, deg, 12);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_PolyMul)->Arg(2)->Arg(4)->Arg(8);

static void BM_PbwNormalize(benchmark::State& state) {
  auto ch = fixtures::sl2().chart;
  Rng rng(2);
  std::vector<Letter> word;
  for (int i = 0; i < state.range(0); ++i) word.push_back(Letter::g(uniform(rng, 0, 2)));
  for (auto _ : state) benchmark::DoNotOptimize(pbw_normalize(ch, word, RewriteOrder::Leftmost));
}
BENCHMARK(BM_PbwNormalize)->DenseRange(3, 7, 2);

static void BM_Schouten(benchmark::State& state) {
  auto ch = fixtures::sl2().chart;
  Rng rng(3);
  auto u = rand_pv(rng, ch, 1, 4), v = rand_pv(rng, ch, 1, 4);
  for (auto _ : state) benchmark::DoNotOptimize(schouten(ch, u, v));
}
BENCHMARK(BM_Schouten);

static void BM_JetAction(benchmark::State& state) {
  auto ch = fixtures::sl2().chart;
  Enveloping U(ch);
  Rng rng(4);
  const int cap = static_cast<int>(state.range(0));
  auto p = rand_op(rng, ch.n(), ch.r(), 1, 1, 1, 2);
  auto a = rand_jet(rng, ch.n(), ch.r(), 2, cap);
  for (auto _ : state) benchmark::DoNotOptimize(jet_action(U, p, a));
}
BENCHMARK(BM_JetAction)->DenseRange(2, 4);

static void BM_HomotopyDecomposition(benchmark::State& state) {
  Rng rng(5);
  FiberShape sh;
  sh.r = 3;
  sh.n = 1;
  sh.ydeg = static_cast<int>(state.range(0));
  sh.xi = 2;
  sh.terms = 8;
  Section s = rand_fiber(rng, Bundle::S, sh);
  for (auto _ : state) benchmark::DoNotOptimize(delta_diff(kappa(s)) + kappa(delta_diff(s)) + h_projection(s));
}
BENCHMARK(BM_HomotopyDecomposition)->DenseRange(3, 7, 2);

static void BM_BuildFedosov(benchmark::State& state) {
  auto f = fixtures::sl2();
  auto g = connection_of(f);
  for (auto _ : state) benchmark::DoNotOptimize(build_fedosov(f.chart, g, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_BuildFedosov)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

static void BM_FedosovD(benchmark::State& state) {
  auto f = fixtures::sl2();
  auto fd = build_fedosov(f.chart, connection_of(f), 6);
  Rng rng(6);
  FiberShape sh;
  sh.r = 3;
  sh.n = 1;
  sh.ydeg = 6;
  sh.xi = 1;
  Section s = rand_fiber(rng, Bundle::T, sh);
  for (auto _ : state) benchmark::DoNotOptimize(fedosov_D(fd, fedosov_D(fd, s)));
}
BENCHMARK(BM_FedosovD)->Unit(benchmark::kMillisecond);

static void BM_MoyalAssociativity(benchmark::State& state) {
  auto ch = fixtures::tangent2().chart;
  Enveloping U(ch);
  const int m = static_cast<int>(state.range(0));
  auto d = moyal_deform(ch, EPolyvector::wedge_of({0, 1}), m);
  for (auto _ : state) benchmark::DoNotOptimize(associativity_residual(U, d));
}
BENCHMARK(BM_MoyalAssociativity)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

static void BM_OperatorCohomology(benchmark::State& state) {
  auto ch = fixtures::sl2().chart;
  Enveloping U(ch);
  for (auto _ : state) {
    auto s = operator_slice(U, 1, 2);
    benchmark::DoNotOptimize(truncated_cohomology(s.slice));
  }
}
BENCHMARK(BM_OperatorCohomology)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
