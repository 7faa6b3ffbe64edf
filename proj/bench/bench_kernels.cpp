// Serial reference kernels against their OpenMP versions.

#include "qhofer/hofer.hpp"
#include "qhofer/parallel.hpp"
#include "qhofer/quantum.hpp"
#include "qhofer/seidel.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace qhofer;

namespace {

const QPowerTable& table() {
  static const QPowerTable t(200);
  return t;
}

std::vector<Rational> tenths() {
  std::vector<Rational> out;
  for (int i = 1; i <= 9; ++i) {
    Rational q(i, 10);
    q.canonicalize();
    out.push_back(q);
  }
  return out;
}

SampledPath random_path(std::size_t slices, std::size_t points) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1, 1);
  SampledPath p;
  p.values.assign(slices, std::vector<double>(points));
  for (auto& row : p.values)
    for (auto& x : row) x = u(rng);
  p.time_step = 1.0 / static_cast<double>(slices - 1);
  return p;
}

void BM_QkSweepSerial(benchmark::State& state) {
  const auto grid = tenths();
  for (auto _ : state) benchmark::DoNotOptimize(qk_sweep_serial(table(), 2, 200, grid));
}
void BM_QkSweepParallel(benchmark::State& state) {
  const auto grid = tenths();
  for (auto _ : state) benchmark::DoNotOptimize(qk_sweep(table(), 2, 200, grid));
}

void BM_RadialMeanSerial(benchmark::State& state) {
  RadialHamiltonian h{RadialHamiltonian::Affine{0, 1}, Rational(1, 4)};
  for (auto _ : state) benchmark::DoNotOptimize(radial_mean_serial(h, static_cast<int>(state.range(0))));
}
void BM_RadialMeanParallel(benchmark::State& state) {
  RadialHamiltonian h{RadialHamiltonian::Affine{0, 1}, Rational(1, 4)};
  for (auto _ : state) benchmark::DoNotOptimize(radial_mean(h, static_cast<int>(state.range(0))));
}

void BM_PathLengthsSerial(benchmark::State& state) {
  auto p = random_path(static_cast<std::size_t>(state.range(0)), 512);
  for (auto _ : state) benchmark::DoNotOptimize(path_lengths_serial(p));
}
void BM_PathLengthsParallel(benchmark::State& state) {
  auto p = random_path(static_cast<std::size_t>(state.range(0)), 512);
  for (auto _ : state) benchmark::DoNotOptimize(path_lengths(p));
}

void BM_ExtremumSerial(benchmark::State& state) {
  auto p = random_path(static_cast<std::size_t>(state.range(0)), 512);
  for (auto _ : state) benchmark::DoNotOptimize(fixed_extremum_check_serial(p, 4));
}
void BM_ExtremumParallel(benchmark::State& state) {
  auto p = random_path(static_cast<std::size_t>(state.range(0)), 512);
  for (auto _ : state) benchmark::DoNotOptimize(fixed_extremum_check(p, 4));
}

void BM_ProductSerial(benchmark::State& state) {
  const auto& t = table();
  for (auto _ : state) benchmark::DoNotOptimize(quantum_product(t.model(), t[200], t[-200]));
}
void BM_ProductParallel(benchmark::State& state) {
  const auto& t = table();
  for (auto _ : state) benchmark::DoNotOptimize(quantum_product_parallel(t.model(), t[200], t[-200]));
}

}  // namespace

BENCHMARK(BM_QkSweepSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_QkSweepParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RadialMeanSerial)->Arg(10000)->Arg(1000000);
BENCHMARK(BM_RadialMeanParallel)->Arg(10000)->Arg(1000000);
BENCHMARK(BM_PathLengthsSerial)->Arg(256)->Arg(4096);
BENCHMARK(BM_PathLengthsParallel)->Arg(256)->Arg(4096);
BENCHMARK(BM_ExtremumSerial)->Arg(256)->Arg(4096);
BENCHMARK(BM_ExtremumParallel)->Arg(256)->Arg(4096);
BENCHMARK(BM_ProductSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ProductParallel)->Unit(benchmark::kMillisecond);

int main(int argc, char** argv) {
  configure_threads_from_env();
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
