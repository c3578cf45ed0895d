#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "relloc/graph.hpp"

namespace relloc {

// Eigenvalues of the iteration matrix, xi_i = 1 - tau*gamma - tau*lambda_i,
// sorted descending. xi_0 = 1 - tau*gamma corresponds to the constant vector;
// under the stability assumption every xi lies in [-1 + tau*gamma, 1 - tau*gamma].
struct IterationSpectrum {
  Eigen::VectorXd xi;
};

// Maps the Laplacian spectrum through the affine transform above. Throws
// StepSizeError if the result leaves the stability interval.
IterationSpectrum iteration_spectrum(const LaplacianSpectrum& s, double tau,
                                     double gamma);

enum class CurveKind { kClosedForm, kEmpirical };

struct CurveParams {
  double tau = 0;
  double gamma = 0;
  double sigma = 0;
  double nu = 0;
  std::string graph;  // short description, filled by callers that have one
};

struct MseCurve {
  std::vector<double> values;  // index t = 0..horizon
  CurveKind kind = CurveKind::kClosedForm;
  CurveParams params;
};

// Expected mean-square error of the regularized iteration after t steps,
//   H_t = (nu^2/N) sum_i xi_i^{2t} + (tau sigma^2/N) sum_i (1 - xi_i^{2t}) / (1 - xi_i),
// evaluated for t = 0..horizon with one squared-factor accumulator per
// eigenvalue, O(N) per step. The terms are grouped as
//   H_t = H_inf + (1/N) sum_i xi_i^{2t} (nu^2 - tau sigma^2 / (1 - xi_i))
// so the time-varying part is a sum of nonnegative decaying terms; this keeps
// the curve numerically monotone all the way into saturation.
MseCurve closed_form_mse(const IterationSpectrum& qs, double tau, double sigma,
                         double nu, long horizon);

// Limit value H_inf = (sigma^2/N) sum_i 1/(gamma + lambda_i). Independent of
// the step size.
double asymptotic_mse(const LaplacianSpectrum& s, double sigma, double gamma);

// alpha = nu^2 / (tau sigma^2) = 1 / (tau gamma), the time-scale constant in
// the stopping bounds.
double alpha(double tau, double gamma);

// Smallest t with H_t < (1 + epsilon) H_inf, by incremental evaluation of the
// closed form. Gives up (NumericalError) beyond 10x the universal bound,
// which a correct evaluation never reaches.
long stopping_time_exact(const IterationSpectrum& qs, double tau, double sigma,
                         double nu, double epsilon);

// Universal bound (alpha/2) ln(2 alpha / epsilon): depends on the graph and
// problem only through alpha.
double stopping_time_bound(double alpha, double epsilon);

// Sharper intermediate bound ln(2 alpha / epsilon) / ln(1/(1 - 1/alpha)^2).
// At most the universal bound, and approaches it as alpha grows.
double tightest_intermediate_bound(double alpha, double tau, double gamma,
                                   double epsilon);

}  // namespace relloc
