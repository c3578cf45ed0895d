// Step cost: neighbor-local operator vs the dense Q x + w oracle. The local
// form is O(M) per step and is the one the solver uses; the dense product is
// O(N^2) and exists for tests, the gap here is the point of the comparison.
#include <benchmark/benchmark.h>

#include <Eigen/Dense>
#include <utility>

#include "relloc/graph.hpp"
#include "relloc/problem.hpp"
#include "relloc/solver.hpp"

namespace {

using namespace relloc;

struct Instance {
  ProblemSpec spec;
  Realization real;
  SolverConfig cfg;
};

Instance make_instance(int n) {
  ProblemSpec spec = ProblemSpec::with_zero_prior(build_cycle(n), 20.0, 1.0);
  Realization real = sample_realization(spec, 42);
  const double gamma = regularization_ratio(spec);
  SolverConfig cfg{default_tau(spec.graph, gamma), gamma, true};
  return {std::move(spec), std::move(real), cfg};
}

void BM_NeighborLocalStep(benchmark::State& state) {
  const Instance inst = make_instance(static_cast<int>(state.range(0)));
  const StepOperator op(inst.spec.graph, inst.cfg, Algorithm::kRegularized,
                        inst.real.measurements, inst.spec.prior_mean);
  Eigen::VectorXd x = inst.spec.prior_mean;
  Eigen::VectorXd out(x.size());
  for (auto _ : state) {
    op.apply(x, out);
    benchmark::DoNotOptimize(out.data());
    x.swap(out);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_NeighborLocalStep)->Arg(64)->Arg(256)->Arg(1024)->Arg(4096);

void BM_DenseMatrixStep(benchmark::State& state) {
  const Instance inst = make_instance(static_cast<int>(state.range(0)));
  const Eigen::MatrixXd q = iteration_matrix(inst.spec.graph, inst.cfg);
  const Eigen::MatrixXd a = incidence_matrix(inst.spec.graph);
  const Eigen::VectorXd w =
      inst.cfg.tau * (a.transpose() * inst.real.measurements) +
      inst.cfg.tau * inst.cfg.gamma * inst.spec.prior_mean;
  Eigen::VectorXd x = inst.spec.prior_mean;
  Eigen::VectorXd out(x.size());
  for (auto _ : state) {
    out.noalias() = q * x;
    out += w;
    benchmark::DoNotOptimize(out.data());
    x.swap(out);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_DenseMatrixStep)->Arg(64)->Arg(256)->Arg(1024)->Arg(4096);

void BM_FullTrajectory(benchmark::State& state) {
  const Instance inst = make_instance(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    const Trajectory traj =
        run(inst.spec, inst.real, inst.cfg, 200, Algorithm::kRegularized);
    benchmark::DoNotOptimize(traj.states.back().data());
  }
  state.SetItemsProcessed(state.iterations() * 200 * state.range(0));
}
BENCHMARK(BM_FullTrajectory)->Arg(64)->Arg(256)->Arg(1024);

void BM_DirectSolution(benchmark::State& state) {
  const Instance inst = make_instance(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    const Eigen::VectorXd star =
        optimal_solution(inst.real, inst.spec, inst.cfg.gamma);
    benchmark::DoNotOptimize(star.data());
  }
}
BENCHMARK(BM_DirectSolution)->Arg(64)->Arg(256)->Arg(1024);

}  // namespace

BENCHMARK_MAIN();
