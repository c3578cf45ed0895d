#include "relloc/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

#include "relloc/errors.hpp"
#include "relloc/rng.hpp"

namespace relloc {

namespace {

// Trials are processed in fixed-size chunks: a chunk's trials may run on any
// thread, but reduction always walks the chunk in trial order, so sums are
// bitwise independent of the thread count. The chunk size bounds memory
// (curves per algorithm in flight) and must not depend on the thread count.
constexpr long kChunkSize = 32;

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_for(long count, int threads,
                  const std::function<void(long)>& body) {
  if (threads <= 1 || count <= 1) {
    for (long i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<long> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const long i = next.fetch_add(1);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        std::scoped_lock lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  const int spawn = static_cast<int>(
      std::min<long>(count, static_cast<long>(threads)));
  pool.reserve(spawn);
  for (int k = 0; k < spawn; ++k) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

double mean_square_error(const Eigen::VectorXd& x,
                         const Eigen::VectorXd& truth) {
  return (x - truth).squaredNorm() / static_cast<double>(x.size());
}

// Error curve of one algorithm on one realization; only the current state is
// kept, so the horizon can be long.
void trial_curve(const ProblemSpec& spec, const Realization& real,
                 const SolverConfig& cfg, Algorithm alg, long horizon,
                 std::vector<double>& out) {
  StepOperator op(spec.graph, cfg, alg, real.measurements, spec.prior_mean);
  Eigen::VectorXd x = spec.prior_mean;
  Eigen::VectorXd next(spec.graph.node_count());
  out.resize(static_cast<std::size_t>(horizon) + 1);
  out[0] = mean_square_error(x, real.ground_truth);
  for (long t = 1; t <= horizon; ++t) {
    op.apply(x, next);
    x.swap(next);
    out[static_cast<std::size_t>(t)] = mean_square_error(x, real.ground_truth);
  }
}

struct Accumulator {
  std::vector<double> sum, sumsq;

  explicit Accumulator(long horizon)
      : sum(static_cast<std::size_t>(horizon) + 1, 0.0),
        sumsq(static_cast<std::size_t>(horizon) + 1, 0.0) {}

  void add(const std::vector<double>& curve) {
    for (std::size_t t = 0; t < curve.size(); ++t) {
      sum[t] += curve[t];
      sumsq[t] += curve[t] * curve[t];
    }
  }

  EmpiricalCurve finalize(long trials) const {
    EmpiricalCurve out;
    out.trials = trials;
    const double cnt = static_cast<double>(trials);
    out.mean.resize(sum.size());
    out.std_error.assign(sum.size(), 0.0);
    for (std::size_t t = 0; t < sum.size(); ++t) {
      out.mean[t] = sum[t] / cnt;
      if (trials > 1) {
        const double var =
            std::max(0.0, (sumsq[t] - sum[t] * sum[t] / cnt) / (cnt - 1.0));
        out.std_error[t] = std::sqrt(var / cnt);
      }
    }
    return out;
  }
};

void validate_runs(long horizon, long trials) {
  if (horizon < 0) throw InvalidParameterError("horizon must be nonnegative");
  if (trials < 1) throw InvalidParameterError("trials must be at least 1");
}

}  // namespace

EmpiricalCurve empirical_mse(const ProblemSpec& spec, const SolverConfig& cfg,
                             Algorithm alg, long horizon, long trials,
                             std::uint64_t seed,
                             const MonteCarloOptions& opts) {
  validate_runs(horizon, trials);
  const int threads = resolve_threads(opts.max_threads);
  const long retain =
      std::min<long>(std::clamp(opts.retain_samples, 0, 20), trials);

  Accumulator acc(horizon);
  std::vector<std::vector<double>> retained;
  retained.reserve(static_cast<std::size_t>(retain));
  const long chunk = std::min(kChunkSize, trials);
  std::vector<std::vector<double>> buffer(static_cast<std::size_t>(chunk));

  for (long start = 0; start < trials; start += chunk) {
    const long count = std::min(chunk, trials - start);
    parallel_for(count, threads, [&](long k) {
      const long r = start + k;
      const Realization real = sample_realization(
          spec, rng::mix(seed, static_cast<std::uint64_t>(r)));
      trial_curve(spec, real, cfg, alg, horizon,
                  buffer[static_cast<std::size_t>(k)]);
    });
    for (long k = 0; k < count; ++k) {
      auto& curve = buffer[static_cast<std::size_t>(k)];
      acc.add(curve);
      if (start + k < retain) retained.push_back(curve);
    }
  }

  EmpiricalCurve out = acc.finalize(trials);
  out.realization_samples = std::move(retained);
  return out;
}

ComparisonResult compare_algorithms(const ProblemSpec& spec,
                                    const SolverConfig& cfg, long horizon,
                                    long trials, std::uint64_t seed,
                                    const MonteCarloOptions& opts) {
  validate_runs(horizon, trials);
  const int threads = resolve_threads(opts.max_threads);
  const long retain =
      std::min<long>(std::clamp(opts.retain_samples, 0, 20), trials);
  SolverConfig baseline_cfg = cfg;
  baseline_cfg.tau = opts.baseline_tau.value_or(cfg.tau);

  Accumulator acc_reg(horizon), acc_base(horizon);
  std::vector<std::vector<double>> retained_reg, retained_base;
  const long chunk = std::min(kChunkSize, trials);
  std::vector<std::vector<double>> buf_reg(static_cast<std::size_t>(chunk));
  std::vector<std::vector<double>> buf_base(static_cast<std::size_t>(chunk));

  for (long start = 0; start < trials; start += chunk) {
    const long count = std::min(chunk, trials - start);
    parallel_for(count, threads, [&](long k) {
      const long r = start + k;
      // One realization per trial, consumed by both algorithms.
      const Realization real = sample_realization(
          spec, rng::mix(seed, static_cast<std::uint64_t>(r)));
      trial_curve(spec, real, cfg, Algorithm::kRegularized, horizon,
                  buf_reg[static_cast<std::size_t>(k)]);
      trial_curve(spec, real, baseline_cfg, Algorithm::kBaseline, horizon,
                  buf_base[static_cast<std::size_t>(k)]);
    });
    for (long k = 0; k < count; ++k) {
      acc_reg.add(buf_reg[static_cast<std::size_t>(k)]);
      acc_base.add(buf_base[static_cast<std::size_t>(k)]);
      if (start + k < retain) {
        retained_reg.push_back(buf_reg[static_cast<std::size_t>(k)]);
        retained_base.push_back(buf_base[static_cast<std::size_t>(k)]);
      }
    }
  }

  ComparisonResult out{acc_reg.finalize(trials), acc_base.finalize(trials)};
  out.regularized.realization_samples = std::move(retained_reg);
  out.baseline.realization_samples = std::move(retained_base);
  return out;
}

}  // namespace relloc
