#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <limits>

#include "doctest.h"
#include "relloc/errors.hpp"
#include "relloc/graph.hpp"
#include "relloc/problem.hpp"
#include "relloc/rng.hpp"
#include "relloc/solver.hpp"
#include "support.hpp"

using namespace relloc;
using relloc::testing::dense_step;
using relloc::testing::finite_difference_gradient;
using relloc::testing::random_graph;
using relloc::testing::random_vector;

namespace {

// Single edge with sigma = nu = 1, gamma = 1, tau = 1/2; every quantity
// below is hand-computable.
struct SingleEdge {
  Graph g = build_path(2);
  SolverConfig cfg{0.5, 1.0, true};
  Eigen::VectorXd b = Eigen::VectorXd::Ones(1);
  Eigen::VectorXd x0 = Eigen::VectorXd::Zero(2);
};

}  // namespace

TEST_CASE("default step size is 1/(max_degree + gamma)") {
  CHECK(default_tau(build_path(2), 1.0) == 0.5);
  CHECK(default_tau(build_cycle(160), 0.0025) == 1.0 / 2.0025);
  CHECK(default_tau(build_complete(5), 0.01) == 1.0 / 4.01);
  CHECK_THROWS_AS(default_tau(build_path(2), 0.0), InvalidParameterError);
}

TEST_CASE("iteration matrix golden for the single edge") {
  const SingleEdge s;
  const Eigen::MatrixXd q = iteration_matrix(s.g, s.cfg);
  // Q = (1 - 1/2) I - (1/2) [[1,-1],[-1,1]] = [[0, 1/2], [1/2, 0]].
  CHECK(q(0, 0) == 0.0);
  CHECK(q(0, 1) == 0.5);
  CHECK(q(1, 0) == 0.5);
  CHECK(q(1, 1) == 0.0);
}

TEST_CASE("iteration matrix approaches identity as tau vanishes") {
  const Graph g = build_cycle(6);
  const Eigen::MatrixXd q = iteration_matrix(g, {1e-12, 0.3, true});
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(6, 6);
  CHECK((q - id).lpNorm<Eigen::Infinity>() <= 1e-11);
}

TEST_CASE("iteration matrix eigenvalues match the affine spectrum map") {
  const Graph g = build_erdos_renyi(14, 0.4, 31);
  const SolverConfig cfg{default_tau(g, 0.2), 0.2, true};
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> direct(
      iteration_matrix(g, cfg), Eigen::EigenvaluesOnly);
  REQUIRE(direct.info() == Eigen::Success);
  const LaplacianSpectrum s = spectrum(g);
  // Direct eigenvalues ascend; the affine map of ascending lambda descends.
  const int n = g.node_count();
  for (int i = 0; i < n; ++i) {
    const double mapped = 1.0 - cfg.tau * cfg.gamma - cfg.tau * s.eigenvalues(i);
    CHECK(std::abs(direct.eigenvalues()(n - 1 - i) - mapped) <= 1e-10);
  }
}

TEST_CASE("gradient matches central finite differences") {
  rng::Engine eng = rng::make_engine(2024);
  for (int k = 0; k < 10; ++k) {
    const Graph g = random_graph(k, 10, eng);
    const double sigma = 0.5 + rng::uniform01(eng);
    const double gamma = 0.1 + rng::uniform01(eng);
    const Eigen::VectorXd x = random_vector(g.node_count(), 2.0, eng);
    const Eigen::VectorXd x0 = random_vector(g.node_count(), 2.0, eng);
    const Eigen::VectorXd b = random_vector(g.edge_count(), 2.0, eng);
    const Eigen::VectorXd grad = objective_gradient(x, b, x0, g, sigma, gamma);
    const Eigen::VectorXd fd =
        finite_difference_gradient(g, x, b, x0, sigma, gamma, 1e-6);
    const double scale = std::max(1.0, grad.lpNorm<Eigen::Infinity>());
    CHECK((grad - fd).lpNorm<Eigen::Infinity>() <= 1e-6 * scale);
  }
}

TEST_CASE("gradient vanishes exactly on consistent data") {
  const Graph g = build_torus_grid(3, 3);
  rng::Engine eng = rng::make_engine(5);
  const Eigen::VectorXd x = random_vector(g.node_count(), 3.0, eng);
  // b holds the exact per-edge differences of x and the prior equals x, so
  // both residual terms cancel term by term, with no rounding left over.
  Eigen::VectorXd b(g.edge_count());
  for (int e = 0; e < g.edge_count(); ++e) {
    const auto& [u, v] = g.edges()[e];
    b(e) = x(v) - x(u);
  }
  const Eigen::VectorXd grad = objective_gradient(x, b, x, g, 0.7, 0.4);
  CHECK(grad.lpNorm<Eigen::Infinity>() == 0.0);
}

TEST_CASE("gradient validates dimensions and parameters") {
  const Graph g = build_path(3);
  const Eigen::VectorXd x = Eigen::VectorXd::Zero(3);
  const Eigen::VectorXd b = Eigen::VectorXd::Zero(2);
  CHECK_THROWS_AS(
      objective_gradient(Eigen::VectorXd::Zero(4), b, x, g, 1.0, 1.0),
      InvalidParameterError);
  CHECK_THROWS_AS(
      objective_gradient(x, Eigen::VectorXd::Zero(3), x, g, 1.0, 1.0),
      InvalidParameterError);
  CHECK_THROWS_AS(objective_gradient(x, b, x, g, 0.0, 1.0),
                  InvalidParameterError);
}

TEST_CASE("single step golden on the single edge") {
  const SingleEdge s;
  const Eigen::VectorXd x1 =
      step_regularized(s.x0, s.b, s.x0, s.g, s.cfg);
  // x1 = Q*0 + tau*A^T b + tau*gamma*x0 = (1/2)(-1, +1).
  CHECK(x1(0) == -0.5);
  CHECK(x1(1) == 0.5);
}

TEST_CASE("neighbor-local step agrees with the dense product") {
  rng::Engine eng = rng::make_engine(99);
  for (int k = 0; k < 12; ++k) {
    const Graph g = random_graph(k, 20, eng);
    const double gamma = 0.05 + rng::uniform01(eng);
    const SolverConfig cfg{default_tau(g, gamma), gamma, true};
    const Eigen::VectorXd x = random_vector(g.node_count(), 5.0, eng);
    const Eigen::VectorXd x0 = random_vector(g.node_count(), 5.0, eng);
    const Eigen::VectorXd b = random_vector(g.edge_count(), 5.0, eng);

    const Eigen::VectorXd local = step_regularized(x, b, x0, g, cfg);
    const Eigen::VectorXd dense =
        dense_step(g, cfg.tau, cfg.gamma, Algorithm::kRegularized, b, x0, x);
    CHECK((local - dense).lpNorm<Eigen::Infinity>()
          <= 1e-12 * std::max(1.0, dense.lpNorm<Eigen::Infinity>()));

    const double tau_base = 1.0 / g.max_degree();
    const Eigen::VectorXd local_base = step_baseline(x, b, g, tau_base);
    const Eigen::VectorXd dense_base =
        dense_step(g, tau_base, 0.0, Algorithm::kBaseline, b, x0, x);
    CHECK((local_base - dense_base).lpNorm<Eigen::Infinity>()
          <= 1e-12 * std::max(1.0, dense_base.lpNorm<Eigen::Infinity>()));
  }
}

TEST_CASE("vanishing regularization reduces to the baseline step") {
  const Graph g = build_cycle(9);
  rng::Engine eng = rng::make_engine(7);
  const Eigen::VectorXd x = random_vector(9, 2.0, eng);
  const Eigen::VectorXd x0 = random_vector(9, 2.0, eng);
  const Eigen::VectorXd b = random_vector(g.edge_count(), 2.0, eng);
  const double tau = 0.5;
  const Eigen::VectorXd reg =
      step_regularized(x, b, x0, g, {tau, 1e-15, true});
  const Eigen::VectorXd base = step_baseline(x, b, g, tau);
  CHECK((reg - base).lpNorm<Eigen::Infinity>() <= 1e-9);
}

TEST_CASE("step size violations throw, or warn when enforcement is off") {
  const Graph g = build_cycle(5);  // max_degree 2
  const Eigen::VectorXd b = Eigen::VectorXd::Zero(5);
  const Eigen::VectorXd x0 = Eigen::VectorXd::Zero(5);

  CHECK_THROWS_AS(StepOperator(g, {0.0, 1.0, true}, Algorithm::kRegularized,
                               b, x0),
                  InvalidParameterError);
  CHECK_THROWS_AS(StepOperator(g, {0.5, 0.0, true}, Algorithm::kRegularized,
                               b, x0),
                  InvalidParameterError);
  CHECK_THROWS_AS(StepOperator(g, {2.0, 0.5, true}, Algorithm::kRegularized,
                               b, x0),
                  StepSizeError);  // tau * gamma >= 1
  CHECK_THROWS_AS(StepOperator(g, {0.49, 0.1, true}, Algorithm::kRegularized,
                               b, x0),
                  StepSizeError);  // above 1/(2 + 0.1)
  CHECK_THROWS_AS(StepOperator(g, {0.51, 0.0, true}, Algorithm::kBaseline,
                               b, x0),
                  StepSizeError);  // above 1/2

  // At the bound exactly: accepted on both paths.
  CHECK_NOTHROW(StepOperator(g, {1.0 / 2.1, 0.1, true},
                             Algorithm::kRegularized, b, x0));
  CHECK_NOTHROW(StepOperator(g, {0.5, 0.0, true}, Algorithm::kBaseline, b, x0));

  // Enforcement off: constructs and still iterates.
  StepOperator loose(g, {0.49, 0.1, false}, Algorithm::kRegularized, b, x0);
  Eigen::VectorXd out;
  loose.apply(x0, out);
  CHECK(out.size() == 5);
}

TEST_CASE("trajectory starts at the prior and has horizon+1 states") {
  const Graph g = build_cycle(8);
  const ProblemSpec spec = ProblemSpec::with_zero_prior(g, 2.0, 1.0);
  const Realization r = sample_realization(spec, 3);
  const double gamma = regularization_ratio(spec);
  const SolverConfig cfg{default_tau(g, gamma), gamma, true};

  const Trajectory t0 = run(spec, r, cfg, 0, Algorithm::kRegularized);
  REQUIRE(t0.states.size() == 1);
  CHECK(t0.states[0] == spec.prior_mean);

  const Trajectory t = run(spec, r, cfg, 25, Algorithm::kRegularized);
  REQUIRE(t.states.size() == 26);
  CHECK(t.states[0] == spec.prior_mean);
  CHECK_THROWS_AS(run(spec, r, cfg, -1, Algorithm::kRegularized),
                  InvalidParameterError);
}

TEST_CASE("direct solution golden on the single edge") {
  const SingleEdge s;
  Graph g = build_path(2);
  const ProblemSpec spec(g, s.x0, 1.0, 1.0);
  Realization r;
  r.ground_truth = Eigen::VectorXd::Zero(2);
  r.noise = s.b;
  r.measurements = s.b;
  const Eigen::VectorXd x = optimal_solution(r, spec, 1.0);
  // (L + I)^{-1} A^T b = [[2,-1],[-1,2]]^{-1} (-1, 1) = (-1/3, 1/3).
  CHECK(std::abs(x(0) + 1.0 / 3.0) <= 1e-15);
  CHECK(std::abs(x(1) - 1.0 / 3.0) <= 1e-15);
}

TEST_CASE("iterates converge to the direct solution at the expected rate") {
  rng::Engine eng = rng::make_engine(404);
  for (int k = 0; k < 6; ++k) {
    const Graph g = random_graph(k, 16, eng);
    const double nu = 5.0 + 10.0 * rng::uniform01(eng);
    const double sigma = 0.5 + rng::uniform01(eng);
    const int n = g.node_count();
    const ProblemSpec spec(g, random_vector(n, 3.0, eng), nu, sigma);
    const Realization r = sample_realization(spec, 1000 + k);
    const double gamma = regularization_ratio(spec);
    const SolverConfig cfg{default_tau(g, gamma), gamma, true};

    const Eigen::VectorXd star = optimal_solution(r, spec, gamma);
    const Trajectory traj = run(spec, r, cfg, 400, Algorithm::kRegularized);
    const double d0 = (traj.states[0] - star).norm();
    for (const long t : {10L, 100L, 400L}) {
      const double dt = (traj.states[static_cast<std::size_t>(t)] - star).norm();
      const double bound = std::pow(1.0 - cfg.tau * cfg.gamma, double(t)) * d0;
      CHECK(dt <= bound * (1.0 + 1e-9) + 1e-12);
    }

    // The fixed point of the step operator is the direct solution.
    Eigen::VectorXd next;
    StepOperator op(g, cfg, Algorithm::kRegularized, r.measurements,
                    spec.prior_mean);
    op.apply(star, next);
    CHECK((next - star).lpNorm<Eigen::Infinity>()
          <= 1e-9 * (1.0 + star.lpNorm<Eigen::Infinity>()));
  }
}

TEST_CASE("both algorithms preserve the barycenter") {
  rng::Engine eng = rng::make_engine(606);
  const Graph g = build_erdos_renyi(18, 0.3, 17);
  const int n = g.node_count();
  Eigen::VectorXd x0 = random_vector(n, 4.0, eng);
  x0.array() += 3.0;  // nonzero barycenter
  const ProblemSpec spec(g, x0, 2.0, 1.0);
  const Realization r = sample_realization(spec, 42);
  const double gamma = regularization_ratio(spec);
  const double sum0 = x0.sum();

  const SolverConfig reg_cfg{default_tau(g, gamma), gamma, true};
  const Trajectory reg = run(spec, r, reg_cfg, 300, Algorithm::kRegularized);
  const SolverConfig base_cfg{1.0 / g.max_degree(), 0.0, true};
  const Trajectory base = run(spec, r, base_cfg, 300, Algorithm::kBaseline);
  for (const Trajectory* traj : {&reg, &base})
    for (const auto& state : traj->states)
      CHECK(std::abs(state.sum() - sum0)
            <= 1e-9 * std::max(1.0, std::abs(sum0)));
}

TEST_CASE("direct solution keeps the prior barycenter") {
  const Graph g = build_cycle(10);
  rng::Engine eng = rng::make_engine(7070);
  const ProblemSpec spec(g, random_vector(10, 5.0, eng), 3.0, 1.0);
  const Realization r = sample_realization(spec, 8);
  const Eigen::VectorXd star = optimal_solution(r, spec, regularization_ratio(spec));
  CHECK(std::abs(star.sum() - spec.prior_mean.sum())
        <= 1e-9 * std::max(1.0, std::abs(spec.prior_mean.sum())));
}
