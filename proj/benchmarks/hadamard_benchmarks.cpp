#include <benchmark/benchmark.h>

#include <vector>

#include "hadamard/convex.hpp"
#include "hadamard/geometry.hpp"
#include "hadamard/harness.hpp"
#include "hadamard/mapping.hpp"
#include "hadamard/sampling.hpp"
#include "hadamard/solvers.hpp"

using namespace hadamard;

namespace {

Space space_for(int index) {
  switch (index) {
    case 0:
      return make_space(SpaceDescriptor::euclidean(2));
    case 1:
      return make_space(SpaceDescriptor::hyperbolic(2));
    case 2:
      return make_space(SpaceDescriptor::tree(random_tree(10, 0)));
    default:
      return make_space(SpaceDescriptor::product(SpaceDescriptor::euclidean(2), SpaceDescriptor::hyperbolic(2)));
  }
}

std::vector<Point> sample(const Space& s, int count) {
  RandomStream r(1);
  const auto region = default_region(s, 4.0);
  std::vector<Point> out;
  for (int i = 0; i < count; ++i) out.push_back(random_point(s, region, r));
  return out;
}

void BM_Distance(benchmark::State& state) {
  const auto s = space_for(static_cast<int>(state.range(0)));
  const auto pts = sample(s, 256);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(distance(s, pts[i % 256], pts[(i + 1) % 256]));
    ++i;
  }
  state.SetLabel(describe(s.descriptor()));
}
BENCHMARK(BM_Distance)->DenseRange(0, 3);

void BM_GeodesicPoint(benchmark::State& state) {
  const auto s = space_for(static_cast<int>(state.range(0)));
  const auto pts = sample(s, 256);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(geodesic_point(s, pts[i % 256], pts[(i + 1) % 256], 0.3));
    ++i;
  }
  state.SetLabel(describe(s.descriptor()));
}
BENCHMARK(BM_GeodesicPoint)->DenseRange(0, 3);

void BM_ProjectSegment(benchmark::State& state) {
  const auto s = space_for(static_cast<int>(state.range(0)));
  const auto pts = sample(s, 258);
  const ConvexSetDescriptor seg{Segment{pts[256], pts[257]}};
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(project_point(s, seg, pts[i % 256]));
    ++i;
  }
  state.SetLabel(describe(s.descriptor()));
}
BENCHMARK(BM_ProjectSegment)->DenseRange(0, 3);

void BM_ProjectWithCertificate(benchmark::State& state) {
  const auto s = space_for(1);
  const auto pts = sample(s, 257);
  const ConvexSetDescriptor ball{Ball{pts[256], 1.5}};
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(project(s, ball, pts[i % 256], static_cast<int>(state.range(0))));
    ++i;
  }
}
BENCHMARK(BM_ProjectWithCertificate)->Arg(256)->Arg(1000);

void BM_ImplicitStep(benchmark::State& state) {
  const auto s = make_space(SpaceDescriptor::euclidean(2));
  const ConvexSetDescriptor c{Ball{Point::euclidean({0, 0}), 3.0}};
  const auto t = MappingDescriptor::projection({Segment{Point::euclidean({-2, 1}), Point::euclidean({2, 1})}});
  const double alpha = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(
        implicit_step(s, c, t, alpha, Point::euclidean({0.01, 0}), Point::euclidean({1, -1}), 1e-10, 50'000'000));
}
BENCHMARK(BM_ImplicitStep)->Arg(10)->Arg(100)->Arg(1000);

void BM_ExplicitRun(benchmark::State& state) {
  const auto s = make_space(SpaceDescriptor::hyperbolic(2));
  const Basepoint o{origin(s)};
  const ConvexSetDescriptor c{Ball{o.o, 3.0}};
  const auto pts = sample(s, 2);
  const auto t = MappingDescriptor::projection({Segment{pts[0], pts[1]}});
  Schedule schedule = default_explicit_schedule();
  SolverOptions opt;
  opt.budget = state.range(0);
  opt.outer_tol = 0.0;
  for (auto _ : state) benchmark::DoNotOptimize(run_explicit(s, c, t, schedule, o, o.o, opt));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ExplicitRun)->Arg(1000);

void BM_HarnessAxioms(benchmark::State& state) {
  const auto s = space_for(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(check_space_axioms(s, 1000, 1e-8, 1));
  state.SetLabel(describe(s.descriptor()));
}
BENCHMARK(BM_HarnessAxioms)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
