#pragma once

#include <Eigen/Dense>
#include <vector>

#include "relloc/graph.hpp"
#include "relloc/problem.hpp"

namespace relloc {

enum class Algorithm {
  kRegularized,  // gradient descent on the regularized objective
  kBaseline,     // gradient descent on the plain least-squares objective
};

struct SolverConfig {
  double tau;    // step size
  double gamma;  // regularization weight (ignored by the baseline)
  // Stability bound violations throw StepSizeError when true; when false a
  // warning is printed once and the iteration proceeds (exploratory use).
  bool enforce_assumption = true;
};

// Largest step size satisfying the stability assumption, 1 / (max_degree + gamma).
double default_tau(const Graph& g, double gamma);

// Dense iteration matrix Q = (1 - tau*gamma) I - tau L. The fixed-point
// iteration is x <- Q x + w; analysis and tests use Q, the solver never
// materializes it.
Eigen::MatrixXd iteration_matrix(const Graph& g, const SolverConfig& cfg);

// Gradient of the regularized objective
//   (1/sigma^2) ||A x - b||^2 + (1/nu^2) ||x - x0||^2
// which is (2/sigma^2) (A^T (A x - b) + gamma (x - x0)), accumulated
// edge-wise so a consistent (x, b) pair cancels exactly.
Eigen::VectorXd objective_gradient(const Eigen::VectorXd& x,
                                   const Eigen::VectorXd& b,
                                   const Eigen::VectorXd& x0, const Graph& g,
                                   double sigma, double gamma);

// One iteration of either algorithm in neighbor-local form: output component
// i reads x_i, the neighbors' entries, the measurements on incident edges and
// the node's own prior entry. This is the production step; the dense product
// Q x + w is reserved for test oracles.
class StepOperator {
 public:
  // Validates the step size: tau > 0 and, for the regularized algorithm,
  // tau <= 1/(max_degree + gamma) with tau*gamma < 1; for the baseline,
  // tau <= 1/max_degree. Violations follow cfg.enforce_assumption.
  StepOperator(const Graph& g, const SolverConfig& cfg, Algorithm alg,
               const Eigen::VectorXd& b, const Eigen::VectorXd& x0);

  void apply(const Eigen::VectorXd& x, Eigen::VectorXd& out) const;
  int node_count() const { return static_cast<int>(self_coeff_.size()); }

 private:
  const Graph* graph_;
  double tau_;
  Eigen::VectorXd self_coeff_;  // diagonal of Q: 1 - tau*gamma - tau*degree
  Eigen::VectorXd offset_;      // w = tau A^T b (+ tau*gamma*x0 when regularized)
};

Eigen::VectorXd step_regularized(const Eigen::VectorXd& x,
                                 const Eigen::VectorXd& b,
                                 const Eigen::VectorXd& x0, const Graph& g,
                                 const SolverConfig& cfg);
Eigen::VectorXd step_baseline(const Eigen::VectorXd& x,
                              const Eigen::VectorXd& b, const Graph& g,
                              double tau);

struct Trajectory {
  std::vector<Eigen::VectorXd> states;  // states[0] = prior mean, horizon+1 entries
  Algorithm algorithm;
};

Trajectory run(const ProblemSpec& spec, const Realization& realization,
               const SolverConfig& cfg, long horizon, Algorithm alg);

// Minimizer of the regularized objective, (L + gamma I)^{-1} (A^T b + gamma x0),
// via Cholesky on the shifted Laplacian. Throws NumericalError unless the
// residual is within 1e-10 * ||rhs||.
Eigen::VectorXd optimal_solution(const Realization& realization,
                                 const ProblemSpec& spec, double gamma);

}  // namespace relloc
