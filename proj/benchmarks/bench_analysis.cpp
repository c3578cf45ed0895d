// Analysis-path costs: the eigendecomposition dominates, the closed-form
// curve and the stopping scan are O(N) per step after it.
#include <benchmark/benchmark.h>

#include "relloc/analysis.hpp"
#include "relloc/graph.hpp"
#include "relloc/solver.hpp"

namespace {

using namespace relloc;

constexpr double kSigma = 1.0;
constexpr double kNu = 20.0;
constexpr double kGamma = (kSigma * kSigma) / (kNu * kNu);

void BM_Spectrum(benchmark::State& state) {
  const Graph g = build_cycle(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    const LaplacianSpectrum s = spectrum(g);
    benchmark::DoNotOptimize(s.eigenvalues.data());
  }
}
BENCHMARK(BM_Spectrum)->Arg(64)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_ClosedFormCurve(benchmark::State& state) {
  const Graph g = build_cycle(static_cast<int>(state.range(0)));
  const double tau = default_tau(g, kGamma);
  const IterationSpectrum qs = iteration_spectrum(spectrum(g), tau, kGamma);
  for (auto _ : state) {
    const MseCurve curve = closed_form_mse(qs, tau, kSigma, kNu, 1000);
    benchmark::DoNotOptimize(curve.values.data());
  }
  state.SetItemsProcessed(state.iterations() * 1000 * state.range(0));
}
BENCHMARK(BM_ClosedFormCurve)->Arg(64)->Arg(256)->Arg(1024);

void BM_StoppingTimeExact(benchmark::State& state) {
  const Graph g = build_cycle(static_cast<int>(state.range(0)));
  const double tau = default_tau(g, kGamma);
  const IterationSpectrum qs = iteration_spectrum(spectrum(g), tau, kGamma);
  for (auto _ : state) {
    const long t_star = stopping_time_exact(qs, tau, kSigma, kNu, 0.01);
    benchmark::DoNotOptimize(t_star);
  }
}
BENCHMARK(BM_StoppingTimeExact)->Arg(64)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
