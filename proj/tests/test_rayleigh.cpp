#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "sg/quadrature.hpp"
#include "sg/radial_solver.hpp"
#include "sg/rayleigh.hpp"

using namespace sg;
constexpr double kPi = std::numbers::pi;

namespace {

RadialFunction decaying_sine(double n_half, double R) {
  return {[n_half, R](double t) {
            const double e = std::exp(-n_half * t);
            const double s = std::sin(kPi * t / R);
            const double c = std::cos(kPi * t / R);
            return std::make_pair(e * s, e * (-n_half * s + (kPi / R) * c));
          },
          "exp-decaying sine"};
}

}  // namespace

TEST_CASE("Rayleigh quotient of the exact Euclidean eigenfunction") {
  // sin(pi t)/t on the unit 3-ball gives exactly pi^2
  RadialFunction f{[](double t) {
                     if (t < 1e-12) return std::make_pair(kPi, 0.0);
                     const double s = std::sin(kPi * t);
                     const double c = std::cos(kPi * t);
                     return std::make_pair(s / t, (kPi * c * t - s) / (t * t));
                   },
                   "euclidean eigenfunction"};
  const double q = rayleigh_quotient(WarpedModel::linear_ball(2), DomainSpec(1.0), f);
  CHECK(q == doctest::Approx(kPi * kPi).epsilon(1e-9));
}

TEST_CASE("Rayleigh quotient of the exact exp-band eigenfunction") {
  RadialFunction f{[](double t) {
                     const double e = std::exp(-t);
                     const double s = std::sin(kPi * t / 10.0);
                     const double c = std::cos(kPi * t / 10.0);
                     // cos(pi t / 10) written as a phase shift keeps one code path
                     return std::make_pair(e * c, e * (-c - (kPi / 10.0) * s));
                   },
                   "exp band eigenfunction"};
  const double q = rayleigh_quotient(WarpedModel::exp_band(2), DomainSpec(5.0), f);
  CHECK(q == doctest::Approx(1.0 + kPi * kPi / 100.0).epsilon(1e-9));
}

TEST_CASE("quotient dominates the exact hyperbolic eigenvalue") {
  for (double R : {5.0, 10.0, 20.0}) {
    const double q =
        rayleigh_quotient(WarpedModel::sinh_ball(2), DomainSpec(R), decaying_sine(1.0, R));
    CHECK(q >= 1.0 + kPi * kPi / (R * R) - 1e-9);
  }
}

TEST_CASE("boundary and degeneracy rejection") {
  RadialFunction bad{[](double t) { return std::make_pair(1.0 + t, 1.0); },
                     "does not vanish"};
  CHECK_THROWS_AS(
      rayleigh_quotient(WarpedModel::linear_ball(2), DomainSpec(1.0), bad),
      std::invalid_argument);

  RadialFunction zero{[](double) { return std::make_pair(0.0, 0.0); }, "zero"};
  CHECK_THROWS_AS(
      rayleigh_quotient(WarpedModel::linear_ball(2), DomainSpec(1.0), zero),
      std::invalid_argument);
}

TEST_CASE("upper bound report invariants") {
  for (int n : {1, 2, 3}) {
    for (double R : {5.0, 10.0, 25.0}) {
      const UpperBoundReport rep = test_function_upper_bound(n, R);
      CHECK(rep.F_value > 0.0);
      CHECK(rep.G_value > 0.0);
      CHECK(rep.G_value <= kPi / 2.0 + 1e-12);
      CHECK(rep.quotient_FG == doctest::Approx(rep.F_value / rep.G_value));
      // F(R) <= (pi/2)(n^2/4 + pi^2/R^2): drop the boundary layer factor
      CHECK(rep.F_value <=
            (kPi / 2.0) * (0.25 * n * n + kPi * kPi / (R * R)) + 1e-12);
    }
  }
  CHECK_THROWS_AS(test_function_upper_bound(0, 10.0), std::invalid_argument);
  CHECK_THROWS_AS(test_function_upper_bound(2, 0.5), std::invalid_argument);
}

TEST_CASE("quotient sandwiches the solver value from above") {
  const UpperBoundReport rep = test_function_upper_bound(2, 10.0);
  const double lam =
      first_eigenvalue(WarpedModel::sinh_ball(2), DomainSpec(10.0), 1e-10).lambda;
  CHECK(rep.quotient_FG >= lam - 1e-9);
  CHECK(lam == doctest::Approx(1.0 + kPi * kPi / 100.0).epsilon(1e-9));
}

TEST_CASE("substitution chain: direct quotient equals F/G") {
  // e^{-nt} sinh^n t = (1 - e^{-2t})^n / 2^n, then theta = pi t / R; the
  // constants cancel in the quotient, so both routes agree
  for (int n : {1, 2, 3}) {
    const double R = 8.0;
    const double direct = rayleigh_quotient(WarpedModel::sinh_ball(n), DomainSpec(R),
                                            decaying_sine(0.5 * n, R));
    const UpperBoundReport rep = test_function_upper_bound(n, R);
    CHECK(direct == doctest::Approx(rep.quotient_FG).epsilon(1e-9));
  }
}

TEST_CASE("three-term expansion tracks the quotient at large R") {
  // the closed three-term value sits above the quotient: F keeps negative
  // boundary-layer corrections of order R^-3 that the expansion drops, so the
  // gap decays like R^-3 one-sidedly. Constant calibrated by quadrature
  // (gap * R^3 -> about 6.2 for n = 1).
  for (double R : {25.0, 50.0, 100.0}) {
    const UpperBoundReport rep = test_function_upper_bound(1, R);
    const double gap = rep.three_term - rep.quotient_FG;
    CHECK(gap >= -1e-12);
    CHECK(gap <= 10.0 / (R * R * R));
  }
}

TEST_CASE("closed-form integral against its quadrature oracle") {
  for (double r : {0.5, 1.0, 2.0, 10.0, 100.0}) {
    const double oracle = integrate(
        [r](double theta) {
          const double s = std::sin(theta);
          return std::exp(-r * theta) * s * s;
        },
        0.0, kPi);
    const double closed = sin2_exp_integral(r);
    CHECK(std::abs(closed - oracle) / oracle < 1e-10);
  }
  CHECK(sin2_exp_integral(2.0) ==
        doctest::Approx((1.0 - std::exp(-2.0 * kPi)) / 8.0).epsilon(1e-14));
  CHECK(sin2_exp_integral(10.0) ==
        doctest::Approx(2.0 * (1.0 - std::exp(-10.0 * kPi)) / 1040.0).epsilon(1e-14));
}

TEST_CASE("closed-form integral limit and domain") {
  CHECK(std::abs(sin2_exp_integral(1e-6) - kSin2IntegralAtZero) < 1e-5);
  CHECK_THROWS_AS(sin2_exp_integral(0.0), std::domain_error);
  CHECK_THROWS_AS(sin2_exp_integral(-1.0), std::domain_error);
}

TEST_CASE("alternating binomial sum") {
  CHECK(alternating_binomial_sum(1) == doctest::Approx(1.0));
  CHECK(alternating_binomial_sum(2) == doctest::Approx(15.0 / 8.0).epsilon(1e-15));
  CHECK(alternating_binomial_sum(4) ==
        doctest::Approx(4.0 - 6.0 / 8.0 + 4.0 / 27.0 - 1.0 / 64.0).epsilon(1e-15));

  // brute-force double-precision oracle for moderate n
  for (int n : {3, 5, 8, 12}) {
    double brute = 0.0;
    double binom = 1.0;
    for (int k = 1; k <= n; ++k) {
      binom = binom * (n - k + 1) / k;
      brute += (k % 2 == 1 ? 1.0 : -1.0) * binom / (double(k) * k * k);
    }
    CHECK(alternating_binomial_sum(n) == doctest::Approx(brute).epsilon(1e-12));
  }
}

TEST_CASE("tail residual of G decays and keeps a stable sign") {
  for (int n : {1, 2, 3}) {
    const double r50 = g_tail_residual(n, 50.0);
    const double r100 = g_tail_residual(n, 100.0);
    const double r200 = g_tail_residual(n, 200.0);
    CHECK(std::abs(r100) < std::abs(r50));
    CHECK(std::abs(r200) < std::abs(r100));
    CHECK(r50 * r100 > 0.0);
    CHECK(r100 * r200 > 0.0);
  }
  CHECK(std::abs(g_tail_residual(1, 100.0)) < 0.5);
}
