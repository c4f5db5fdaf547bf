#include <benchmark/benchmark.h>

#include "generators.hpp"
#include "qfisher/fisher.hpp"
#include "qfisher/optimize.hpp"
#include "qfisher/sld.hpp"

using namespace qfisher;

namespace {

struct Sample {
  DensityOp rho;
  HermitianMatrix drho;
};

Sample random_sample(std::size_t dim, std::uint64_t seed) {
  testing::Gen g(seed);
  DensityOp rho(g.density(dim));
  HermitianMatrix h = g.hermitian(dim);
  // traceless direction
  const double t = h.trace() / static_cast<double>(dim);
  ComplexMatrix m = h.matrix();
  for (std::size_t i = 0; i < dim; ++i) m(i, i) -= t;
  return {std::move(rho), HermitianMatrix(m)};
}

void BM_HermEigen(benchmark::State& state) {
  testing::Gen g(1);
  const HermitianMatrix m = g.hermitian(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(herm_eigen(m));
}
BENCHMARK(BM_HermEigen)->Arg(2)->Arg(4)->Arg(8);

void BM_SldSolve(benchmark::State& state) {
  const Sample s = random_sample(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(sld_solve(s.rho, s.drho));
}
BENCHMARK(BM_SldSolve)->Arg(2)->Arg(4)->Arg(8);

void BM_QuantumFisher(benchmark::State& state) {
  const Sample s = random_sample(static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(quantum_fisher(s.rho, s.drho));
}
BENCHMARK(BM_QuantumFisher)->Arg(2)->Arg(4)->Arg(8);

void BM_QubitClosedForm(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(qfi_qubit_closed_form(0.2, 0.7, {0.4, -0.7}, {0.9, 0.2}));
}
BENCHMARK(BM_QubitClosedForm);

void BM_MaximizeCfi(benchmark::State& state) {
  const Sample s = random_sample(2, 4);
  OptimizeOptions opt;
  opt.grid_n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(maximize_cfi(s.rho, s.drho, opt));
}
BENCHMARK(BM_MaximizeCfi)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
