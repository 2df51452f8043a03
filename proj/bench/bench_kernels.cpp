// Serial reference loops against the OpenMP versions on cubic grids.
#include "parspec/freq_split.hpp"
#include "parspec/kernels.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace parspec;

namespace {

SpectralField state(int n, int comps) {
  const Grid g = Grid::cubic(3, n, 16.0);
  std::mt19937_64 rng(1);
  SpectralField s = random_band_limited(g, comps, (n / 2 - 1) * g.dk(0), rng);
  drop_nyquist(s);
  return s;
}

Exec exec_of(const benchmark::State& st) { return st.range(1) == 0 ? Exec::Serial : Exec::Parallel; }

void label(benchmark::State& st) { st.SetLabel(st.range(1) == 0 ? "serial" : "omp"); }

void BM_cns_propagate(benchmark::State& st) {
  const ModelParams p;
  const SpectralField u0 = state(static_cast<int>(st.range(0)), 4);
  SpectralField u = u0;
  for (auto _ : st) {
    kernels::cns_propagate(p, ModeFunction::Exp, 0.1, u, exec_of(st));
    benchmark::DoNotOptimize(u.data[0].data());
  }
  label(st);
}

void BM_cns_etd1(benchmark::State& st) {
  const ModelParams p;
  SpectralField u = state(static_cast<int>(st.range(0)), 4);
  const SpectralField g = state(static_cast<int>(st.range(0)), 4);
  for (auto _ : st) {
    kernels::cns_etd1(p, 0.01, u, g, exec_of(st));
    benchmark::DoNotOptimize(u.data[0].data());
  }
  label(st);
}

void BM_cns_resolvent_pair(benchmark::State& st) {
  const ModelParams p;
  SpectralField re = state(static_cast<int>(st.range(0)), 4), im = re;
  for (auto _ : st) {
    kernels::cns_resolvent_pair(p, Complex(0.3, 0.7), re, im, exec_of(st));
    benchmark::DoNotOptimize(re.data[0].data());
  }
  label(st);
}

void BM_dwe_propagate(benchmark::State& st) {
  const DweParams p;
  SpectralField u = state(static_cast<int>(st.range(0)), 2);
  for (auto _ : st) {
    kernels::dwe_propagate(p, ModeFunction::Exp, 0.1, u, exec_of(st));
    benchmark::DoNotOptimize(u.data[0].data());
  }
  label(st);
}

void BM_sobolev_sq(benchmark::State& st) {
  const SpectralField u = state(static_cast<int>(st.range(0)), 4);
  for (auto _ : st) benchmark::DoNotOptimize(kernels::sobolev_sq(u, 3.0, false, exec_of(st)));
  label(st);
}

void BM_mul_add(benchmark::State& st) {
  const std::size_t n = static_cast<std::size_t>(st.range(0)) * st.range(0) * st.range(0);
  std::vector<double> a(n, 1.5), b(n, 0.5), out(n, 0.0);
  for (auto _ : st) {
    kernels::mul_add(n, a.data(), b.data(), 0.25, out.data(), exec_of(st));
    benchmark::DoNotOptimize(out.data());
  }
  label(st);
}

void sizes(benchmark::internal::Benchmark* b) {
  for (int n : {32, 64})
    for (int par : {0, 1}) b->Args({n, par});
  b->Unit(benchmark::kMillisecond);
}

}  // namespace

BENCHMARK(BM_cns_propagate)->Apply(sizes);
BENCHMARK(BM_cns_etd1)->Apply(sizes);
BENCHMARK(BM_cns_resolvent_pair)->Apply(sizes);
BENCHMARK(BM_dwe_propagate)->Apply(sizes);
BENCHMARK(BM_sobolev_sq)->Apply(sizes);
BENCHMARK(BM_mul_add)->Apply(sizes);

BENCHMARK_MAIN();
