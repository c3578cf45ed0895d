#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "relloc/problem.hpp"
#include "relloc/solver.hpp"

namespace relloc {

struct EmpiricalCurve {
  std::vector<double> mean;       // per-t sample mean of (1/N) ||x[t] - truth||^2
  std::vector<double> std_error;  // per-t standard error; 0 when trials == 1
  long trials = 0;
  // Per-trial error curves for the first retain_samples trials (plot overlays).
  std::vector<std::vector<double>> realization_samples;
};

struct MonteCarloOptions {
  int max_threads = 0;     // 0: hardware concurrency
  int retain_samples = 0;  // capped at 20
  // compare_algorithms only: step size for the baseline run (defaults to the
  // shared cfg.tau, which always satisfies the baseline stability bound when
  // left at default_tau).
  std::optional<double> baseline_tau;
};

// Monte Carlo estimate of the error curve. Trial r draws its realization from
// sub-stream r of `seed`, and trials are reduced in index order regardless of
// thread count, so results are bitwise reproducible under any parallelism
// setting and extending the trial count never changes earlier trials.
EmpiricalCurve empirical_mse(const ProblemSpec& spec, const SolverConfig& cfg,
                             Algorithm alg, long horizon, long trials,
                             std::uint64_t seed,
                             const MonteCarloOptions& opts = {});

struct ComparisonResult {
  EmpiricalCurve regularized;
  EmpiricalCurve baseline;
};

// Runs both algorithms on the same realizations (shared per-trial seeds), so
// the two curves are paired trial by trial.
ComparisonResult compare_algorithms(const ProblemSpec& spec,
                                    const SolverConfig& cfg, long horizon,
                                    long trials, std::uint64_t seed,
                                    const MonteCarloOptions& opts = {});

}  // namespace relloc
