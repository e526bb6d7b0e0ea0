// Parallel kernels against their serial references, plus the end-to-end
// operations built on them.

#include "phaserank/kernels.hpp"
#include "phaserank/means.hpp"
#include "phaserank/randgen.hpp"
#include "phaserank/sectorial.hpp"

#include <benchmark/benchmark.h>

using namespace phaserank;

namespace {

Matrix sectorial(int n) {
  GeneratorSpec spec;
  spec.seed = 1;
  spec.n = n;
  spec.sector = SectorInterval::open(-pi / 2, pi / 2);
  return random_sectorial(spec);
}

void BM_LambdaMinScan(benchmark::State& st) {
  const Matrix a = sectorial(static_cast<int>(st.range(0)));
  const auto [h, k] = hermitian_split(a);
  const auto thetas = kernels::angle_grid(kDefaultGridPoints, -pi);
  for (auto _ : st) benchmark::DoNotOptimize(kernels::lambda_min_scan(h, k, thetas));
}

void BM_LambdaMinScanSerial(benchmark::State& st) {
  const Matrix a = sectorial(static_cast<int>(st.range(0)));
  const auto [h, k] = hermitian_split(a);
  const auto thetas = kernels::angle_grid(kDefaultGridPoints, -pi);
  for (auto _ : st) benchmark::DoNotOptimize(kernels::serial::lambda_min_scan(h, k, thetas));
}

void BM_PrunedGridMax(benchmark::State& st) {
  const Matrix a = sectorial(static_cast<int>(st.range(0)));
  const auto [h, k] = hermitian_split(a);
  const auto thetas = kernels::angle_grid(kDefaultGridPoints, -pi);
  const double norm = spectral_norm(a);
  for (auto _ : st) benchmark::DoNotOptimize(kernels::pruned_grid_max(h, k, thetas, norm));
}

void BM_SupportPoints(benchmark::State& st) {
  const Matrix a = sectorial(static_cast<int>(st.range(0)));
  const auto thetas = kernels::angle_grid(kDefaultGridPoints, 0.0);
  for (auto _ : st) benchmark::DoNotOptimize(kernels::support_points(a, thetas));
}

void BM_SupportPointsSerial(benchmark::State& st) {
  const Matrix a = sectorial(static_cast<int>(st.range(0)));
  const auto thetas = kernels::angle_grid(kDefaultGridPoints, 0.0);
  for (auto _ : st) benchmark::DoNotOptimize(kernels::serial::support_points(a, thetas));
}

std::pair<std::vector<double>, std::vector<double>> nodes(int count) {
  std::vector<double> s, w;
  for (int i = 0; i < count; ++i) {
    s.push_back(-20.0 + 40.0 * (i + 0.5) / count);
    w.push_back(40.0 / count);
  }
  return {s, w};
}

void BM_PencilMeanSum(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const Matrix m = sectorial(n), nn = sectorial(n).adjoint();
  const auto [s, w] = nodes(200);
  for (auto _ : st) benchmark::DoNotOptimize(kernels::pencil_mean_sum(m, nn, s, w));
}

void BM_PencilMeanSumSerial(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const Matrix m = sectorial(n), nn = sectorial(n).adjoint();
  const auto [s, w] = nodes(200);
  for (auto _ : st) benchmark::DoNotOptimize(kernels::serial::pencil_mean_sum(m, nn, s, w));
}

void BM_SectorialDecomposition(benchmark::State& st) {
  const Matrix a = sectorial(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(sectorial_decomposition(a));
}

void BM_GeometricMean(benchmark::State& st) {
  GeneratorSpec spec;
  spec.seed = 2;
  spec.n = static_cast<int>(st.range(0));
  spec.sector = SectorInterval::open(-pi / 2, pi / 2);
  const Matrix m = random_sectorial(spec);
  spec.seed = 3;
  const Matrix n = random_sectorial(spec);
  for (auto _ : st) benchmark::DoNotOptimize(geometric_mean(m, n));
}

void BM_GeometricMeanQuadrature(benchmark::State& st) {
  GeneratorSpec spec;
  spec.seed = 2;
  spec.n = static_cast<int>(st.range(0));
  spec.sector = SectorInterval::open(-pi / 2, pi / 2);
  const Matrix m = random_sectorial(spec);
  spec.seed = 3;
  const Matrix n = random_sectorial(spec);
  for (auto _ : st) benchmark::DoNotOptimize(geometric_mean_quadrature(m, n));
}

}  // namespace

BENCHMARK(BM_LambdaMinScan)->Arg(4)->Arg(8)->Arg(32);
BENCHMARK(BM_LambdaMinScanSerial)->Arg(4)->Arg(8)->Arg(32);
BENCHMARK(BM_PrunedGridMax)->Arg(4)->Arg(8)->Arg(32);
BENCHMARK(BM_SupportPoints)->Arg(4)->Arg(32);
BENCHMARK(BM_SupportPointsSerial)->Arg(4)->Arg(32);
BENCHMARK(BM_PencilMeanSum)->Arg(4)->Arg(16);
BENCHMARK(BM_PencilMeanSumSerial)->Arg(4)->Arg(16);
BENCHMARK(BM_SectorialDecomposition)->Arg(4)->Arg(8)->Arg(32);
BENCHMARK(BM_GeometricMean)->Arg(4)->Arg(8);
BENCHMARK(BM_GeometricMeanQuadrature)->Arg(4)->Arg(8);

BENCHMARK_MAIN();
