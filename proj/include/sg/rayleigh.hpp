#pragma once

#include "sg/models.hpp"

namespace sg {

struct UpperBoundReport {
  double R;
  double F_value;      // numerator integral after the angle substitution
  double G_value;      // denominator integral, in (0, pi/2]
  double quotient_FG;  // variational upper bound F/G
  double three_term;   // n^2/4 + pi^2/R^2 + (n^2 pi^2 / 8) S(n) / R^3
};

// Rayleigh quotient of a radial test function over the model domain:
//   int f'(t)^2 w(t)^n dt / int f(t)^2 w(t)^n dt
// by adaptive quadrature with relative tolerance 1e-11. Rejects functions
// that do not vanish at the Dirichlet endpoint(s) (sup-normalized value
// above 1e-12) or have a vanishing denominator.
double rayleigh_quotient(const WarpedModel& model, const DomainSpec& spec,
                         const RadialFunction& f);

// Upper-bound chain for the hyperbolic ball built on the test function
// e^{-n t / 2} sin(pi t / R). After substituting theta = pi t / R:
//   F(R) = int_0^pi (1 - e^{-2R theta/pi})^n (-(n/2) sin + (pi/R) cos)^2
//   G(R) = int_0^pi (1 - e^{-2R theta/pi})^n sin^2
double quotient_F(int n, double R);
double quotient_G(int n, double R);
UpperBoundReport test_function_upper_bound(int n, double R);

// Closed form of int_0^pi e^{-r theta} sin^2(theta) d theta for r > 0:
//   2 (1 - e^{-pi r}) / (r (r^2 + 4))
// The r -> 0 limit of the integral is pi/2 (kSin2IntegralAtZero); this
// function refuses r <= 0.
double sin2_exp_integral(double r);
inline constexpr double kSin2IntegralAtZero = 1.5707963267948966;

// S(n) = sum_{k=1}^n C(n,k) (-1)^{k+1} / k^3, accumulated in exact rational
// arithmetic before the final division.
double alternating_binomial_sum(int n);

// Residual of the large-R tail law of G:
//   (pi/2 - G(R)) R^3 - (pi^3/4) S(n),
// which decays as R grows.
double g_tail_residual(int n, double R);

}  // namespace sg
