#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>

#include "relloc/graph.hpp"
#include "relloc/problem.hpp"
#include "relloc/rng.hpp"
#include "relloc/solver.hpp"

// Test-only oracles. Everything here is built from the dense incidence matrix
// so it shares no code path with the neighbor-local solver it checks.

namespace relloc::testing {

// Reference step x' = Q x + w assembled densely. The baseline uses gamma = 0
// and drops the prior pull.
inline Eigen::VectorXd dense_step(const Graph& g, double tau, double gamma,
                                  Algorithm alg, const Eigen::VectorXd& b,
                                  const Eigen::VectorXd& x0,
                                  const Eigen::VectorXd& x) {
  const Eigen::MatrixXd A = incidence_matrix(g);
  const double g_eff = alg == Algorithm::kRegularized ? gamma : 0.0;
  const int n = g.node_count();
  const Eigen::MatrixXd Q =
      (1.0 - tau * g_eff) * Eigen::MatrixXd::Identity(n, n) -
      tau * (A.transpose() * A);
  Eigen::VectorXd w = tau * (A.transpose() * b);
  if (alg == Algorithm::kRegularized) w += tau * g_eff * x0;
  return Q * x + w;
}

// The quadratic objective whose gradient the solver implements:
//   (1/sigma^2) (||A x - b||^2 + gamma ||x - x0||^2).
inline double objective_value(const Graph& g, const Eigen::VectorXd& x,
                              const Eigen::VectorXd& b,
                              const Eigen::VectorXd& x0, double sigma,
                              double gamma) {
  const Eigen::MatrixXd A = incidence_matrix(g);
  const double misfit = (A * x - b).squaredNorm();
  const double prior = (x - x0).squaredNorm();
  return (misfit + gamma * prior) / (sigma * sigma);
}

// Central finite differences of the objective, one coordinate at a time.
inline Eigen::VectorXd finite_difference_gradient(const Graph& g,
                                                  const Eigen::VectorXd& x,
                                                  const Eigen::VectorXd& b,
                                                  const Eigen::VectorXd& x0,
                                                  double sigma, double gamma,
                                                  double h) {
  Eigen::VectorXd grad(x.size());
  Eigen::VectorXd probe = x;
  for (int i = 0; i < x.size(); ++i) {
    probe(i) = x(i) + h;
    const double up = objective_value(g, probe, b, x0, sigma, gamma);
    probe(i) = x(i) - h;
    const double down = objective_value(g, probe, b, x0, sigma, gamma);
    probe(i) = x(i);
    grad(i) = (up - down) / (2.0 * h);
  }
  return grad;
}

// Deterministic rotation through the graph families, with sizes drawn from
// the engine. Keeps random-instance suites covering every family.
inline Graph random_graph(int index, int max_n, rng::Engine& eng) {
  const auto draw = [&](int lo, int hi) {
    return lo + static_cast<int>(rng::uniform01(eng) * (hi - lo + 1));
  };
  switch (index % 5) {
    case 0: return build_cycle(draw(3, max_n));
    case 1: return build_path(draw(2, max_n));
    case 2: return build_complete(draw(2, std::min(max_n, 50)));
    case 3: {
      const int side = std::max(2, static_cast<int>(std::sqrt(double(max_n))));
      return build_torus_grid(draw(2, side), draw(2, side));
    }
    default:
      return build_erdos_renyi(draw(5, std::min(max_n, 60)), 0.35,
                               rng::mix(0xacceed, index));
  }
}

inline Eigen::VectorXd random_vector(int n, double scale, rng::Engine& eng) {
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = scale * (2.0 * rng::uniform01(eng) - 1.0);
  return v;
}

}  // namespace relloc::testing
