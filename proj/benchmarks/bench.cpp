#include <benchmark/benchmark.h>

#include "fcs/eig.hpp"
#include "fcs/kernel.hpp"
#include "fcs/models.hpp"
#include "fcs/reconstruct.hpp"
#include "fcs/rng.hpp"

namespace {

void bm_iterate(benchmark::State& state) {
  fcs::CpMap cp = fcs::aklt_model().cp;
  fcs::Rng rng(7);
  fcs::Word word;
  for (int k = 0; k < state.range(0); ++k) word.push_back(rng.gaussian_matrix(3, 3));
  for (auto _ : state)
    benchmark::DoNotOptimize(fcs::iterate(cp, word, fcs::Matrix::identity(2)));
}
BENCHMARK(bm_iterate)->Arg(2)->Arg(4)->Arg(8);

void bm_transfer_spectrum(benchmark::State& state) {
  fcs::CpMap cp = fcs::random_model(2, static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(fcs::transfer_spectrum(cp));
}
BENCHMARK(bm_transfer_spectrum)->Arg(2)->Arg(3)->Arg(4);

void bm_functional_matrix(benchmark::State& state) {
  fcs::CpMap cp = fcs::aklt_model().cp;
  fcs::BoundaryState xi = fcs::invariant_functional(cp);
  const auto m = static_cast<std::size_t>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(fcs::functional_matrix(cp, xi, m, 1));
}
BENCHMARK(bm_functional_matrix)->Arg(1)->Arg(2);

void bm_herm_eig(benchmark::State& state) {
  fcs::Rng rng(11);
  fcs::Matrix h = rng.hermitian(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(fcs::herm_eig(h));
}
BENCHMARK(bm_herm_eig)->Arg(8)->Arg(16)->Arg(32);

void bm_order_seminorm(benchmark::State& state) {
  fcs::Rng rng(13);
  fcs::Matrix a = rng.hermitian(4);
  std::vector<fcs::Matrix> kernel{rng.hermitian(4)};
  for (auto _ : state) benchmark::DoNotOptimize(fcs::order_seminorm(a, kernel));
}
BENCHMARK(bm_order_seminorm);

}  // namespace

BENCHMARK_MAIN();
