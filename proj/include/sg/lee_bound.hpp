#pragma once

namespace sg {

// Parameters of the lower-bound test function
//   psi(t) = u^{-n/2} sin(a ln(eps u)),   u = cosh t,
// on the sublevel region { u < 1/eps } of the hyperbolic model.
struct LeeParameters {
  double epsilon;  // in (0, 1)
  double c_n;      // >= 4 pi (n+1) / (n (n+2))
  double a;        // pi / ln(eps) + c_n / ln(eps)^2, negative

  // a is derived from (epsilon, c_n); the angle a ln(eps u) stays in
  // (0, pi) over u in [1, 1/eps).
  static LeeParameters make(int n, double epsilon, double c_n);

  // default c_n: equality in the constraint, which maximizes a^2
  static LeeParameters make(int n, double epsilon);
};

// Smallest admissible c_n for fiber dimension n.
double minimal_c_n(int n);

// u = cosh t, its derivative, and the drift form of Delta u on the
// hyperbolic model where Delta u = (n+1) u holds exactly.
struct LeeEigenfunction {
  double value(double t) const;
  double derivative(double t) const;
  // residual of u'' + n coth(t) u' - (n+1) u from closed-form derivatives,
  // normalized by u so it stays meaningful where cosh t is astronomically large
  double laplace_residual(int n, double t) const;
};

// Half-width of the sublevel region: cosh(t) < 1/eps  <=>  |t| < t_max.
double region_half_width(double epsilon);

// psi at t >= 0; throws std::domain_error outside the region.
double psi(const LeeParameters& params, int n, double t);

// Finite-difference check of the product-rule identity behind the bound:
//   -Delta psi / psi = n^2/4 + a^2
//     + sech^2(t) [ n(n+2)/4 - (n+1) a cot(a ln(eps u)) - a^2 ].
// The left side uses a central-difference radial Laplacian at step h_step,
// the right side is closed form; the return value is left - right and
// shrinks as O(h_step^2).
double identity_residual(const LeeParameters& params, int n, double t,
                         double h_step);

// Closed-form bracket term at a point of the region.
double pointwise_margin(const LeeParameters& params, int n, double t);

// min over a uniform grid of
//   sech^2(t) [ n(n+2)/4 - (n+1) a cot(a ln(eps cosh t)) - a^2 ];
// nonnegative when eps is small enough, in which case the bound
// lambda_1 >= n^2/4 + a^2 is certified.
double pointwise_lower_bound_check(const LeeParameters& params, int n,
                                   int grid_points);

// Certified lower bound n^2/4 + a^2 for the hyperbolic ball of radius R,
// using eps = 1/cosh(R) (the ball coincides with the sublevel region).
// Throws std::runtime_error carrying the failing minimum if the pointwise
// check does not pass.
double ball_lower_bound(int n, double R);

}  // namespace sg
