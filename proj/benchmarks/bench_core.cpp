#include <benchmark/benchmark.h>

#include "carpetlab/geometry.hpp"
#include "carpetlab/measure.hpp"

namespace {

using namespace carpetlab;

CarpetSpec figure2_spec() {
  return parse_spec(
      R"({"n":27,"m":8,"digits":[[1,1],[4,1],[7,1],[1,4],[3,4],[5,4],[7,4],[9,4],[11,4]]})");
}

void BM_ell(benchmark::State& state) {
  const long k = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(ell(27, 8, k));
}
BENCHMARK(BM_ell)->Arg(16)->Arg(128)->Arg(1024);

void BM_profile(benchmark::State& state) {
  const CarpetSpec spec = figure2_spec();
  for (auto _ : state) benchmark::DoNotOptimize(profile(spec));
}
BENCHMARK(BM_profile);

void BM_enumerate_squares(benchmark::State& state) {
  const CarpetSpec spec = figure2_spec();
  const EnumBudget budget;
  const long k = state.range(0);
  for (auto _ : state) {
    std::uint64_t count = 0;
    for_each_square(spec, k, budget, [&](const ApproximateSquare&) { ++count; });
    benchmark::DoNotOptimize(count);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(count_squares(spec, k, budget)));
}
BENCHMARK(BM_enumerate_squares)->Arg(2)->Arg(3)->Arg(4);

void BM_components(benchmark::State& state) {
  const CarpetSpec spec = figure2_spec();
  const EnumBudget budget;
  for (auto _ : state)
    benchmark::DoNotOptimize(components(spec, state.range(0), ApproxKind::TildeApprox, budget));
}
BENCHMARK(BM_components)->Arg(2)->Arg(3);

void BM_measure_additivity(benchmark::State& state) {
  const CarpetSpec spec = figure2_spec();
  const CarpetProfile prof = profile(spec);
  const EnumBudget budget;
  for (auto _ : state) {
    Rational mass(0);
    for_each_square(spec, 3, budget, [&](const ApproximateSquare& q) {
      mass += mu_square(prof, q);
    });
    benchmark::DoNotOptimize(mass == Rational(1));
  }
}
BENCHMARK(BM_measure_additivity);

void BM_gamma_sequence(benchmark::State& state) {
  const CarpetProfile e = profile(figure2_spec());
  const CarpetProfile f = profile(parse_spec(
      R"({"n":27,"m":8,"digits":[[1,0],[1,2],[1,4],[1,6],[3,4],[3,6]]})"));
  for (auto _ : state) {
    Rational last(0);
    for (long k = 1; k <= 30; ++k) last = gamma(k, e, f);
    benchmark::DoNotOptimize(last);
  }
}
BENCHMARK(BM_gamma_sequence);

}  // namespace

BENCHMARK_MAIN();
