#include "relloc/problem.hpp"

#include <utility>

#include "relloc/errors.hpp"
#include "relloc/rng.hpp"

namespace relloc {

ProblemSpec::ProblemSpec(Graph g, Eigen::VectorXd x0, double nu_, double sigma_)
    : graph(std::move(g)), prior_mean(std::move(x0)), nu(nu_), sigma(sigma_) {
  if (prior_mean.size() != graph.node_count())
    throw InvalidParameterError("prior mean length does not match node count");
  if (!(nu > 0.0)) throw InvalidParameterError("nu must be positive");
  if (!(sigma > 0.0)) throw InvalidParameterError("sigma must be positive");
}

ProblemSpec ProblemSpec::with_zero_prior(Graph g, double nu, double sigma) {
  const int n = g.node_count();
  return ProblemSpec(std::move(g), Eigen::VectorXd::Zero(n), nu, sigma);
}

double regularization_ratio(const ProblemSpec& spec) {
  return (spec.sigma * spec.sigma) / (spec.nu * spec.nu);
}

Realization sample_realization(const ProblemSpec& spec, std::uint64_t seed) {
  const int n = spec.graph.node_count();
  const int m = spec.graph.edge_count();
  rng::NormalSampler truth_draw(rng::mix(seed, 1));
  rng::NormalSampler noise_draw(rng::mix(seed, 2));

  Realization r;
  r.ground_truth.resize(n);
  for (int i = 0; i < n; ++i)
    r.ground_truth(i) = spec.prior_mean(i) + spec.nu * truth_draw();

  r.noise.resize(m);
  r.measurements.resize(m);
  for (int e = 0; e < m; ++e) {
    const auto& [u, v] = spec.graph.edges()[e];
    const double diff = r.ground_truth(v) - r.ground_truth(u);
    r.measurements(e) = diff + spec.sigma * noise_draw();
    // Store the roundtrip so measurements - A*ground_truth == noise exactly.
    r.noise(e) = r.measurements(e) - diff;
  }
  return r;
}

Moments empirical_moments(const ProblemSpec& spec, long trials,
                          std::uint64_t seed) {
  if (trials < 2)
    throw InvalidParameterError("moment estimation needs at least 2 trials");
  const int n = spec.graph.node_count();
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd sumsq = Eigen::VectorXd::Zero(n);
  for (long r = 0; r < trials; ++r) {
    const Realization real =
        sample_realization(spec, rng::mix(seed, static_cast<std::uint64_t>(r)));
    sum += real.ground_truth;
    sumsq += real.ground_truth.cwiseProduct(real.ground_truth);
  }
  Moments mo;
  const double cnt = static_cast<double>(trials);
  mo.mean = sum / cnt;
  mo.variance =
      (sumsq - sum.cwiseProduct(sum) / cnt) / (cnt - 1.0);
  return mo;
}

}  // namespace relloc
