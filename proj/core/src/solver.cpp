#include "relloc/solver.hpp"

#include <cmath>
#include <iostream>
#include <limits>
#include <string>

#include "relloc/errors.hpp"

namespace relloc {

namespace {

constexpr double kBoundSlack = 1.0 + 8.0 * std::numeric_limits<double>::epsilon();

void check_step_size(const Graph& g, const SolverConfig& cfg, Algorithm alg) {
  if (!(cfg.tau > 0.0)) throw InvalidParameterError("tau must be positive");
  std::string violation;
  if (alg == Algorithm::kRegularized) {
    if (!(cfg.gamma > 0.0))
      throw InvalidParameterError("gamma must be positive");
    if (cfg.tau * cfg.gamma >= 1.0)
      throw StepSizeError("tau * gamma must be below 1");
    const double bound = 1.0 / (g.max_degree() + cfg.gamma);
    if (cfg.tau > bound * kBoundSlack)
      violation = "tau = " + std::to_string(cfg.tau) +
                  " exceeds 1/(max_degree + gamma) = " + std::to_string(bound);
  } else {
    const double bound = 1.0 / g.max_degree();
    if (cfg.tau > bound * kBoundSlack)
      violation = "tau = " + std::to_string(cfg.tau) +
                  " exceeds 1/max_degree = " + std::to_string(bound);
  }
  if (!violation.empty()) {
    if (cfg.enforce_assumption) throw StepSizeError(violation);
    std::cerr << "warning: " << violation << "; iteration may diverge\n";
  }
}

}  // namespace

double default_tau(const Graph& g, double gamma) {
  if (!(gamma > 0.0)) throw InvalidParameterError("gamma must be positive");
  return 1.0 / (g.max_degree() + gamma);
}

Eigen::MatrixXd iteration_matrix(const Graph& g, const SolverConfig& cfg) {
  check_step_size(g, cfg, Algorithm::kRegularized);
  Eigen::MatrixXd q = -cfg.tau * laplacian(g);
  q.diagonal().array() += 1.0 - cfg.tau * cfg.gamma;
  return q;
}

Eigen::VectorXd objective_gradient(const Eigen::VectorXd& x,
                                   const Eigen::VectorXd& b,
                                   const Eigen::VectorXd& x0, const Graph& g,
                                   double sigma, double gamma) {
  if (x.size() != g.node_count() || x0.size() != g.node_count())
    throw InvalidParameterError("state length does not match node count");
  if (b.size() != g.edge_count())
    throw InvalidParameterError("measurement length does not match edge count");
  if (!(sigma > 0.0)) throw InvalidParameterError("sigma must be positive");
  Eigen::VectorXd grad = gamma * (x - x0);
  for (int e = 0; e < g.edge_count(); ++e) {
    const auto& [u, v] = g.edges()[e];
    const double r = (x(v) - x(u)) - b(e);
    grad(u) -= r;
    grad(v) += r;
  }
  return (2.0 / (sigma * sigma)) * grad;
}

StepOperator::StepOperator(const Graph& g, const SolverConfig& cfg,
                           Algorithm alg, const Eigen::VectorXd& b,
                           const Eigen::VectorXd& x0)
    : graph_(&g), tau_(cfg.tau) {
  if (b.size() != g.edge_count())
    throw InvalidParameterError("measurement length does not match edge count");
  if (x0.size() != g.node_count())
    throw InvalidParameterError("prior length does not match node count");
  check_step_size(g, cfg, alg);

  const int n = g.node_count();
  const double tau_gamma =
      alg == Algorithm::kRegularized ? cfg.tau * cfg.gamma : 0.0;
  self_coeff_.resize(n);
  for (int i = 0; i < n; ++i)
    self_coeff_(i) = 1.0 - tau_gamma - cfg.tau * g.degree(i);

  offset_ = alg == Algorithm::kRegularized
                ? Eigen::VectorXd(tau_gamma * x0)
                : Eigen::VectorXd(Eigen::VectorXd::Zero(n));
  for (int e = 0; e < g.edge_count(); ++e) {
    const auto& [u, v] = g.edges()[e];
    offset_(u) -= cfg.tau * b(e);
    offset_(v) += cfg.tau * b(e);
  }
}

void StepOperator::apply(const Eigen::VectorXd& x, Eigen::VectorXd& out) const {
  const int n = node_count();
  if (x.size() != n)
    throw InvalidParameterError("state length does not match node count");
  out.resize(n);
  for (int i = 0; i < n; ++i) {
    double acc = self_coeff_(i) * x(i) + offset_(i);
    for (const int j : graph_->neighbors(i)) acc += tau_ * x(j);
    out(i) = acc;
  }
}

Eigen::VectorXd step_regularized(const Eigen::VectorXd& x,
                                 const Eigen::VectorXd& b,
                                 const Eigen::VectorXd& x0, const Graph& g,
                                 const SolverConfig& cfg) {
  StepOperator op(g, cfg, Algorithm::kRegularized, b, x0);
  Eigen::VectorXd out;
  op.apply(x, out);
  return out;
}

Eigen::VectorXd step_baseline(const Eigen::VectorXd& x,
                              const Eigen::VectorXd& b, const Graph& g,
                              double tau) {
  const SolverConfig cfg{tau, 0.0, true};
  StepOperator op(g, cfg, Algorithm::kBaseline, b,
                  Eigen::VectorXd::Zero(g.node_count()));
  Eigen::VectorXd out;
  op.apply(x, out);
  return out;
}

Trajectory run(const ProblemSpec& spec, const Realization& realization,
               const SolverConfig& cfg, long horizon, Algorithm alg) {
  if (horizon < 0) throw InvalidParameterError("horizon must be nonnegative");
  StepOperator op(spec.graph, cfg, alg, realization.measurements,
                  spec.prior_mean);
  Trajectory traj;
  traj.algorithm = alg;
  traj.states.reserve(static_cast<std::size_t>(horizon) + 1);
  traj.states.push_back(spec.prior_mean);
  Eigen::VectorXd next(spec.graph.node_count());
  for (long t = 0; t < horizon; ++t) {
    op.apply(traj.states.back(), next);
    traj.states.push_back(next);
  }
  return traj;
}

Eigen::VectorXd optimal_solution(const Realization& realization,
                                 const ProblemSpec& spec, double gamma) {
  if (!(gamma > 0.0)) throw InvalidParameterError("gamma must be positive");
  const Graph& g = spec.graph;
  Eigen::MatrixXd shifted = laplacian(g);
  shifted.diagonal().array() += gamma;

  Eigen::VectorXd rhs = gamma * spec.prior_mean;
  for (int e = 0; e < g.edge_count(); ++e) {
    const auto& [u, v] = g.edges()[e];
    rhs(u) -= realization.measurements(e);
    rhs(v) += realization.measurements(e);
  }

  const Eigen::LLT<Eigen::MatrixXd> llt(shifted);
  if (llt.info() != Eigen::Success)
    throw NumericalError("Cholesky factorization of L + gamma I failed");
  const Eigen::VectorXd x = llt.solve(rhs);
  const double residual = (shifted * x - rhs).norm();
  if (residual > 1e-10 * rhs.norm() && residual > 1e-10)
    throw NumericalError("linear solve residual too large");
  return x;
}

}  // namespace relloc
