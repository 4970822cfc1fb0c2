// Serial reference kernels against their OpenMP twins and the FFT Hankel product.

#include <benchmark/benchmark.h>

#include <vector>

#include "hankel_lab/kernels.hpp"
#include "hankel_lab/random.hpp"

namespace {

using namespace hankel_lab;

struct HankelInput {
  std::vector<cplx> c, x, y;
};

HankelInput hankel_input(std::size_t m) {
  Rng rng(7);
  return {complex_gaussian_vector(rng, 2 * m - 1), complex_gaussian_vector(rng, m),
          std::vector<cplx>(m)};
}

void BM_HankelDenseSerial(benchmark::State& state) {
  auto in = hankel_input(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    kernels::hankel_matvec_dense_serial(in.c, in.x, in.y);
    benchmark::DoNotOptimize(in.y.data());
  }
}

void BM_HankelDenseParallel(benchmark::State& state) {
  auto in = hankel_input(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    kernels::hankel_matvec_dense_parallel(in.c, in.x, in.y);
    benchmark::DoNotOptimize(in.y.data());
  }
}

void BM_HankelFft(benchmark::State& state) {
  auto in = hankel_input(static_cast<std::size_t>(state.range(0)));
  const kernels::HankelFft plan(in.c, in.x.size());
  for (auto _ : state) {
    plan.apply(in.x, in.y);
    benchmark::DoNotOptimize(in.y.data());
  }
}

std::vector<cplx> blocks(std::size_t points, std::size_t d) {
  Rng rng(11);
  return complex_gaussian_vector(rng, points * d * d);
}

void BM_BlockNormsSerial(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const std::size_t points = 1024;
  const auto data = blocks(points, d);
  std::vector<double> out(points);
  for (auto _ : state) {
    kernels::block_norms_serial(data, d, 3.0, out);
    benchmark::DoNotOptimize(out.data());
  }
}

void BM_BlockNormsParallel(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const std::size_t points = 1024;
  const auto data = blocks(points, d);
  std::vector<double> out(points);
  for (auto _ : state) {
    kernels::block_norms_parallel(data, d, 3.0, out);
    benchmark::DoNotOptimize(out.data());
  }
}

void BM_SparseSynthesisSerial(benchmark::State& state) {
  const std::size_t M = static_cast<std::size_t>(state.range(0));
  std::vector<std::size_t> degrees;
  for (std::size_t k = 1; k < M / 2; k <<= 1) degrees.push_back(k);
  const std::vector<cplx> coeffs(degrees.size(), 1.0);
  std::vector<cplx> out(M);
  for (auto _ : state) {
    kernels::sparse_synthesis_serial(degrees, coeffs, 1, M, out);
    benchmark::DoNotOptimize(out.data());
  }
}

void BM_SparseSynthesisParallel(benchmark::State& state) {
  const std::size_t M = static_cast<std::size_t>(state.range(0));
  std::vector<std::size_t> degrees;
  for (std::size_t k = 1; k < M / 2; k <<= 1) degrees.push_back(k);
  const std::vector<cplx> coeffs(degrees.size(), 1.0);
  std::vector<cplx> out(M);
  for (auto _ : state) {
    kernels::sparse_synthesis_parallel(degrees, coeffs, 1, M, out);
    benchmark::DoNotOptimize(out.data());
  }
}

}  // namespace

BENCHMARK(BM_HankelDenseSerial)->RangeMultiplier(4)->Range(64, 4096);
BENCHMARK(BM_HankelDenseParallel)->RangeMultiplier(4)->Range(64, 4096);
BENCHMARK(BM_HankelFft)->RangeMultiplier(4)->Range(64, 4096);
BENCHMARK(BM_BlockNormsSerial)->Arg(1)->Arg(2)->Arg(4)->Arg(8);
BENCHMARK(BM_BlockNormsParallel)->Arg(1)->Arg(2)->Arg(4)->Arg(8);
BENCHMARK(BM_SparseSynthesisSerial)->RangeMultiplier(8)->Range(1024, 65536);
BENCHMARK(BM_SparseSynthesisParallel)->RangeMultiplier(8)->Range(1024, 65536);

BENCHMARK_MAIN();
