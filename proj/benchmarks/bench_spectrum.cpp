#include <benchmark/benchmark.h>

#include "carpetlab/classify.hpp"
#include "carpetlab/spectrum.hpp"

namespace {

using namespace carpetlab;

CarpetProfile figure2_profile() {
  return profile(parse_spec(
      R"({"n":27,"m":8,"digits":[[1,1],[4,1],[7,1],[1,4],[3,4],[5,4],[7,4],[9,4],[11,4]]})"));
}

CarpetProfile figure2_profile_prime() {
  return profile(parse_spec(
      R"({"n":27,"m":8,"digits":[[1,0],[1,2],[1,4],[1,6],[3,4],[3,6]]})"));
}

void BM_beta(benchmark::State& state) {
  const CarpetProfile prof = figure2_profile();
  const long prec = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(beta(prof, 0.7, prec));
}
BENCHMARK(BM_beta)->Arg(128)->Arg(256)->Arg(512);

void BM_spectrum_value(benchmark::State& state) {
  const CarpetProfile prof = figure2_profile();
  const long prec = state.range(0);
  auto [amin, amax] = alpha_range(prof, prec);
  const Real alpha = (amin + amax) / Real(2L, prec);
  for (auto _ : state) benchmark::DoNotOptimize(spectrum_value(prof, alpha));
}
BENCHMARK(BM_spectrum_value)->Arg(128)->Arg(256);

void BM_spectra_equal(benchmark::State& state) {
  const CarpetProfile e = figure2_profile();
  const CarpetProfile f = figure2_profile_prime();
  for (auto _ : state) benchmark::DoNotOptimize(spectra_equal(e, f, 256));
}
BENCHMARK(BM_spectra_equal);

void BM_dimensions(benchmark::State& state) {
  const CarpetProfile prof = figure2_profile();
  for (auto _ : state) {
    benchmark::DoNotOptimize(dim_hausdorff(prof, 256));
    benchmark::DoNotOptimize(dim_box(prof, 256));
    benchmark::DoNotOptimize(dim_assouad(prof, 256));
  }
}
BENCHMARK(BM_dimensions);

void BM_compare_pair(benchmark::State& state) {
  const CarpetSpec e = parse_spec(
      R"({"n":27,"m":8,"digits":[[1,1],[4,1],[7,1],[1,4],[3,4],[5,4],[7,4],[9,4],[11,4]]})");
  const CarpetSpec f = parse_spec(
      R"({"n":27,"m":8,"digits":[[1,0],[1,2],[1,4],[1,6],[3,4],[3,6]]})");
  for (auto _ : state) benchmark::DoNotOptimize(compare(e, f, {}));
}
BENCHMARK(BM_compare_pair);

}  // namespace
