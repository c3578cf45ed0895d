#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "relloc/graph.hpp"

namespace relloc {

// Estimation setup: node values x are drawn around a known prior mean x0 with
// per-node deviation nu, and each edge measurement observes the endpoint
// difference plus noise with deviation sigma. Draws are Gaussian; the
// closed-form analysis only uses first and second moments, but fixing the
// distribution keeps realizations reproducible.
struct ProblemSpec {
  Graph graph;
  Eigen::VectorXd prior_mean;  // x0, one entry per node
  double nu;                   // prior standard deviation, > 0
  double sigma;                // measurement noise standard deviation, > 0

  ProblemSpec(Graph g, Eigen::VectorXd x0, double nu, double sigma);
  static ProblemSpec with_zero_prior(Graph g, double nu, double sigma);
};

// Regularization weight gamma = sigma^2 / nu^2.
double regularization_ratio(const ProblemSpec& spec);

struct Realization {
  Eigen::VectorXd ground_truth;  // sampled node values
  Eigen::VectorXd noise;         // per-edge noise
  Eigen::VectorXd measurements;  // b, per edge: difference of endpoints + noise
};

// Deterministic under a fixed seed; u < v orientation means measurement e for
// edge (u, v) is ground_truth[v] - ground_truth[u] + noise[e]. Two sub-streams
// are derived from the seed, one for the ground truth and one for the noise,
// so the draws are independent. The stored noise is the roundtrip
// measurements - difference, so recomputing the residual b - A x reproduces
// it bit-exactly.
Realization sample_realization(const ProblemSpec& spec, std::uint64_t seed);

struct Moments {
  Eigen::VectorXd mean;
  Eigen::VectorXd variance;  // per-coordinate, unbiased
};

// Sample moments of the ground truth over `trials` independent draws
// (trial r uses sub-stream r of `seed`). Sampler sanity harness.
Moments empirical_moments(const ProblemSpec& spec, long trials, std::uint64_t seed);

}  // namespace relloc
