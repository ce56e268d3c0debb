#include <benchmark/benchmark.h>

#include <random>

#include "klein/groups.hpp"

using namespace klein;

namespace {

TubeModule special_tube(std::size_t m) { return tube_module(TubeId::special_point(SpecialPoint::one), 1, m); }
TubeModule quadratic_tube(std::size_t m) { return tube_module(TubeId::homogeneous(F2Poly::parse("t^2+t+1")), 0, m); }

void BM_SmithForm(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(0);
  std::uniform_int_distribution<long> d(-9, 9);
  IntMatrix A(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) A(i, j) = d(rng);
  for (auto _ : state) benchmark::DoNotOptimize(smith_form(A));
}
BENCHMARK(BM_SmithForm)->Arg(8)->Arg(16)->Arg(32);

void BM_TubeModule(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(quadratic_tube(static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_TubeModule)->DenseRange(1, 3);

void BM_Cohomology(benchmark::State& state) {
  const KLattice M = quadratic_tube(static_cast<std::size_t>(state.range(0))).lattice;
  for (auto _ : state) benchmark::DoNotOptimize(cohomology_group(M, 4));
}
BENCHMARK(BM_Cohomology)->DenseRange(1, 3);

void BM_ColatticeCohomology(benchmark::State& state) {
  const KLattice M = special_tube(static_cast<std::size_t>(state.range(0))).lattice;
  for (auto _ : state) benchmark::DoNotOptimize(colattice_cohomology(M, 2, 3));
}
BENCHMARK(BM_ColatticeCohomology)->DenseRange(1, 3);

void BM_CanonicalForm(benchmark::State& state) {
  SumCohomology H = sum_cohomology({special_tube(4), tube_module(TubeId::special_point(SpecialPoint::one), 2, 2),
                                    special_tube(1)},
                                   2);
  CohClass e(H.class_length(), 1);
  for (auto _ : state) benchmark::DoNotOptimize(canonical_form(H, e));
}
BENCHMARK(BM_CanonicalForm);

void BM_ExtensionAssociativity(benchmark::State& state) {
  const TubeModule T = quadratic_tube(1);
  CohomologyGroup H = cohomology_group(T.lattice, 2);
  ExtensionGroup G = extension_from_class(T.lattice, CohClass(H.divisors.size(), 1));
  Rng rng(0);
  for (auto _ : state) benchmark::DoNotOptimize(G.associative(rng));
}
BENCHMARK(BM_ExtensionAssociativity);

}  // namespace
BENCHMARK_MAIN();
