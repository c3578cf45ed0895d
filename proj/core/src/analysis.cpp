#include "relloc/analysis.hpp"

#include <cmath>
#include <limits>

#include "relloc/errors.hpp"

namespace relloc {

namespace {

// Per-eigenvalue state for incremental evaluation of the closed form:
// factor_i = xi_i^{2t}, advanced by one multiplication per step, and the
// constant weight_i = nu^2 - tau sigma^2 / (1 - xi_i) >= 0, so that
// H_t = asymptote + (1/N) sum_i factor_i * weight_i. Grouping this way makes
// the time-varying part a sum of nonnegative decaying terms, which keeps the
// evaluated curve monotone even deep into saturation.
struct ClosedFormState {
  Eigen::ArrayXd squared_xi;
  Eigen::ArrayXd factor;
  Eigen::ArrayXd weight;
  double asymptote = 0;
  double inv_n = 0;

  ClosedFormState(const IterationSpectrum& qs, double tau, double sigma,
                  double nu) {
    if (!(tau > 0.0)) throw InvalidParameterError("tau must be positive");
    if (!(sigma > 0.0)) throw InvalidParameterError("sigma must be positive");
    if (!(nu > 0.0)) throw InvalidParameterError("nu must be positive");
    const Eigen::ArrayXd xi = qs.xi.array();
    const int n = static_cast<int>(xi.size());
    if (n < 1) throw InvalidParameterError("empty spectrum");
    squared_xi = xi * xi;
    factor = Eigen::ArrayXd::Ones(n);
    const Eigen::ArrayXd tail = tau * sigma * sigma / (1.0 - xi);
    weight = (nu * nu - tail).max(0.0);
    asymptote = tail.sum() / n;
    inv_n = 1.0 / n;
  }

  double value() const { return asymptote + inv_n * (factor * weight).sum(); }
  double varying_part() const { return inv_n * (factor * weight).sum(); }

  void advance() {
    factor *= squared_xi;
    // Snap denormals to zero: they cost cycles and carry no information at
    // this scale.
    factor = (factor < std::numeric_limits<double>::min()).select(0.0, factor);
  }
};

}  // namespace

IterationSpectrum iteration_spectrum(const LaplacianSpectrum& s, double tau,
                                     double gamma) {
  if (!(tau > 0.0)) throw InvalidParameterError("tau must be positive");
  if (!(gamma > 0.0)) throw InvalidParameterError("gamma must be positive");
  const double tau_gamma = tau * gamma;
  if (tau_gamma >= 1.0) throw StepSizeError("tau * gamma must be below 1");

  const int n = static_cast<int>(s.eigenvalues.size());
  IterationSpectrum qs;
  qs.xi.resize(n);
  // Ascending lambda maps to descending xi under the negative-slope affine map.
  for (int i = 0; i < n; ++i)
    qs.xi(i) = 1.0 - tau_gamma - tau * s.eigenvalues(i);

  const double hi = 1.0 - tau_gamma;
  const double slack = 1e-9 * std::max(1.0, tau * s.eigenvalues(n - 1));
  if (qs.xi(0) > hi + slack || qs.xi(n - 1) < -hi - slack)
    throw StepSizeError(
        "iteration spectrum leaves the stability interval; decrease tau");
  return qs;
}

MseCurve closed_form_mse(const IterationSpectrum& qs, double tau, double sigma,
                         double nu, long horizon) {
  if (horizon < 0) throw InvalidParameterError("horizon must be nonnegative");
  ClosedFormState state(qs, tau, sigma, nu);
  MseCurve curve;
  curve.kind = CurveKind::kClosedForm;
  curve.params.tau = tau;
  curve.params.gamma = (1.0 - qs.xi(0)) / tau;
  curve.params.sigma = sigma;
  curve.params.nu = nu;
  curve.values.reserve(static_cast<std::size_t>(horizon) + 1);
  for (long t = 0;; ++t) {
    curve.values.push_back(state.value());
    if (t == horizon) break;
    state.advance();
  }
  return curve;
}

double asymptotic_mse(const LaplacianSpectrum& s, double sigma, double gamma) {
  if (!(sigma > 0.0)) throw InvalidParameterError("sigma must be positive");
  if (!(gamma > 0.0)) throw InvalidParameterError("gamma must be positive");
  const int n = static_cast<int>(s.eigenvalues.size());
  if (n < 1) throw InvalidParameterError("empty spectrum");
  return (sigma * sigma / n) *
         (1.0 / (gamma + s.eigenvalues.array())).sum();
}

double alpha(double tau, double gamma) {
  if (!(tau > 0.0)) throw InvalidParameterError("tau must be positive");
  if (!(gamma > 0.0)) throw InvalidParameterError("gamma must be positive");
  return 1.0 / (tau * gamma);
}

long stopping_time_exact(const IterationSpectrum& qs, double tau, double sigma,
                         double nu, double epsilon) {
  if (!(epsilon > 0.0)) throw InvalidParameterError("epsilon must be positive");
  ClosedFormState state(qs, tau, sigma, nu);
  // H_t < (1 + eps) H_inf rearranged to the decaying side: varying part
  // below eps * H_inf. Comparing the small quantities directly stays accurate
  // at any scale.
  const double threshold = epsilon * state.asymptote;
  const double tau_gamma = 1.0 - qs.xi(0);
  const long cap = 10 * static_cast<long>(std::ceil(std::max(
                            1.0, stopping_time_bound(1.0 / tau_gamma, epsilon))));
  for (long t = 0; t <= cap; ++t) {
    if (state.varying_part() < threshold) return t;
    state.advance();
  }
  throw NumericalError(
      "stopping time not reached within 10x the universal bound");
}

double stopping_time_bound(double alpha, double epsilon) {
  if (!(alpha > 1.0)) throw InvalidParameterError("alpha must exceed 1");
  if (!(epsilon > 0.0)) throw InvalidParameterError("epsilon must be positive");
  return 0.5 * alpha * std::log(2.0 * alpha / epsilon);
}

double tightest_intermediate_bound(double alpha, double tau, double gamma,
                                   double epsilon) {
  if (!(alpha > 1.0)) throw InvalidParameterError("alpha must exceed 1");
  if (!(epsilon > 0.0)) throw InvalidParameterError("epsilon must be positive");
  if (!(tau > 0.0) || !(gamma > 0.0))
    throw InvalidParameterError("tau and gamma must be positive");
  // ln(2 alpha/eps) / ln(1/(1 - tau gamma)^2), with the denominator written
  // as -2 log1p(-tau gamma) for accuracy at small tau gamma.
  const double tau_gamma = tau * gamma;
  if (tau_gamma >= 1.0) throw StepSizeError("tau * gamma must be below 1");
  return std::log(2.0 * alpha / epsilon) / (-2.0 * std::log1p(-tau_gamma));
}

}  // namespace relloc
