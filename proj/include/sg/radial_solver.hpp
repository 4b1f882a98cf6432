#pragma once

#include <utility>
#include <vector>

#include "sg/models.hpp"

namespace sg {

struct ShootResult {
  // Endpoint value of the shooting solution divided by its running maximum
  // amplitude, so the scale is that of a sup-normalized eigenfunction.
  double endpoint_value;
  // Interior sign changes of the solution before the far endpoint.
  int zero_count;
  // Final polar angle of the (amplitude, angle) form; the Dirichlet
  // condition for the first eigenvalue is theta_end = pi.
  double theta_end;
};

struct EigenEstimate {
  double lambda_low;
  double lambda_high;
  double lambda;             // midpoint of the bracket
  double endpoint_residual;  // shoot(lambda).endpoint_value
  int zero_count_low;        // must be 0
  int zero_count_high;       // must be >= 1
  bool tolerance_warning;    // requested tol below achievable accuracy
};

// Integrates f'' + drift(t) f' + lambda f = 0 from the regular end of the
// domain to the far Dirichlet endpoint in polar (Pruefer) form.
//   ball: series start near t = 0 with f(0) = 1, f'(0) = 0
//   band: t = -R with f = 0, f' = 1
// Throws std::runtime_error on integration-step underflow.
ShootResult shoot(const WarpedModel& model, const DomainSpec& spec, double lambda);

// Brackets the first Dirichlet eigenvalue by the angle crossing pi and
// bisects to width <= tol. Throws std::runtime_error if no bracket is found
// below the search ceiling n^2/4 + pi^2 + 10.
EigenEstimate first_eigenvalue(const WarpedModel& model, const DomainSpec& spec,
                               double tol);

// Independent oracle: symmetric tridiagonal discretization of the
// self-adjoint form -(w^n f')' = lambda w^n f with weights at half-points,
// smallest eigenvalue by bisection with Sturm-sequence counts. O(h^2).
double fd_oracle(const WarpedModel& model, const DomainSpec& spec, int mesh_points);

// Samples of the first eigenfunction at `grid_points` uniformly spaced nodes
// spanning the closed domain, sup-normalized to max value 1. Rejects lambda
// whose endpoint residual is above threshold.
std::vector<std::pair<double, double>> eigenfunction_samples(
    const WarpedModel& model, const DomainSpec& spec, double lambda,
    int grid_points);

}  // namespace sg
