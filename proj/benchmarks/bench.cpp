#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "skelpot/generators.hpp"
#include "skelpot/potential.hpp"
#include "skelpot/regularize.hpp"
#include "skelpot/superform.hpp"

namespace {

using namespace skelpot;

std::string interior_vertex(const MetricGraph& g) {
  for (const auto& v : g.vertices())
    if (!g.is_boundary(v)) return v;
  return g.vertices().front();
}

void BM_Green(benchmark::State& state) {
  Rng rng(11);
  gen::GraphShape shape;
  shape.min_vertices = shape.max_vertices = static_cast<std::size_t>(state.range(0));
  shape.max_edges = 2 * shape.max_vertices;
  const MetricGraph g = gen::graph(rng, shape);
  const GraphPoint x = GraphPoint::vertex(interior_vertex(g));
  for (auto _ : state) benchmark::DoNotOptimize(green(g, x));
}
BENCHMARK(BM_Green)->Arg(4)->Arg(8)->Arg(12);

void BM_SmoothMaxN(benchmark::State& state) {
  std::mt19937_64 mt(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> t(static_cast<std::size_t>(state.range(0)));
  for (auto& v : t) v = u(mt);
  for (auto _ : state) benchmark::DoNotOptimize(smooth_max_n(0.25, t));
}
BENCHMARK(BM_SmoothMaxN)->Arg(2)->Arg(4)->Arg(8);

void BM_Regularize(benchmark::State& state) {
  Rng rng(5);
  const MetricGraph g = gen::graph(rng);
  const PAFunction f = gen::subharmonic(rng, g);
  for (auto _ : state) {
    const RegularizationSequence seq = build_regularization(f);
    benchmark::DoNotOptimize(seq.term(3));
  }
}
BENCHMARK(BM_Regularize);

void BM_SuperformOps(benchmark::State& state) {
  Rng rng(7);
  const auto r = static_cast<std::size_t>(state.range(0));
  SuperForm a = gen::form(rng, r, 1, 1);
  SuperForm b = gen::form(rng, r, 1, 0);
  while (a.is_zero()) a = gen::form(rng, r, 1, 1);
  while (b.is_zero()) b = gen::form(rng, r, 1, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(d_prime(a));
    benchmark::DoNotOptimize(d_second(a));
    benchmark::DoNotOptimize(wedge(a, b));
    benchmark::DoNotOptimize(J(a));
  }
}
BENCHMARK(BM_SuperformOps)->Arg(2)->Arg(3)->Arg(4);

void BM_HessianPositivity(benchmark::State& state) {
  Rng rng(13);
  const Poly psi = gen::convexity_sample(rng, 3, true);
  const SuperForm h = hessian_form(psi);
  std::vector<std::vector<Rational>> points;
  for (int i = 0; i < 8; ++i) points.push_back(gen::point(rng, 3));
  for (auto _ : state) benchmark::DoNotOptimize(positivity(h, points));
}
BENCHMARK(BM_HessianPositivity);

}  // namespace

BENCHMARK_MAIN();
