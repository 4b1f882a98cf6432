#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "sg/lee_bound.hpp"
#include "sg/radial_solver.hpp"
#include "sg/rayleigh.hpp"

using namespace sg;
constexpr double kPi = std::numbers::pi;

TEST_CASE("parameter invariants") {
  const LeeParameters p = LeeParameters::make(2, 1e-3);
  CHECK(p.a < 0.0);
  const double log_eps = std::log(1e-3);
  CHECK(p.a == doctest::Approx(kPi / log_eps + p.c_n / (log_eps * log_eps)));
  CHECK(p.c_n == doctest::Approx(minimal_c_n(2)));
  CHECK(minimal_c_n(2) == doctest::Approx(1.5 * kPi));

  // the angle a ln(eps u) stays in (0, pi) at both region endpoints
  const double at_center = p.a * std::log(p.epsilon * 1.0);
  CHECK(at_center > 0.0);
  CHECK(at_center < kPi);

  CHECK_THROWS_AS(LeeParameters::make(2, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(LeeParameters::make(2, 1e-3, 0.1), std::invalid_argument);
}

TEST_CASE("Lee eigenfunction solves its equation exactly") {
  const LeeEigenfunction u;
  for (int n : {2, 3, 4}) {
    double worst = 0.0;
    for (double t = 0.01; t <= 30.0; t += 0.01) {
      worst = std::max(worst, std::abs(u.laplace_residual(n, t)));
    }
    CHECK(worst < 1e-10);
  }
}

TEST_CASE("Lee eigenfunction geometric identities") {
  const LeeEigenfunction u;
  for (double t : {0.0, 0.5, 2.0, 10.0}) {
    CHECK(u.value(t) >= 1.0);
    const double uu = u.value(t), du = u.derivative(t);
    // u^2 - |du|^2 = 1 on the model; absolute tolerance, the difference of
    // two ~e^{2t} terms cancels catastrophically at t = 10
    CHECK(std::abs(uu * uu - du * du - 1.0) < 1e-6);
    // 1 - |du|^2/u^2 = sech^2 t > 0
    const double sech = 1.0 / std::cosh(t);
    CHECK(1.0 - du * du / (uu * uu) == doctest::Approx(sech * sech).epsilon(1e-9));
  }
}

TEST_CASE("psi values and domain") {
  const LeeParameters p = LeeParameters::make(2, 1e-3);
  // at the center u = 1: sin(a ln eps) = -sin(c_n / ln eps) > 0
  const double log_eps = std::log(1e-3);
  CHECK(psi(p, 2, 0.0) ==
        doctest::Approx(-std::sin(p.c_n / log_eps)).epsilon(1e-12));
  CHECK(psi(p, 2, 0.0) > 0.0);

  const double t_edge = region_half_width(1e-3);
  // psi -> 0 approaching the region boundary
  CHECK(psi(p, 2, t_edge * (1.0 - 1e-9)) < 1e-6);
  CHECK_THROWS_AS(psi(p, 2, t_edge + 0.1), std::domain_error);
  CHECK_THROWS_AS(psi(p, 2, -0.5), std::domain_error);

  // two-path evaluation: split the product into its factors
  const double t = 1.0;
  const double phi = std::pow(std::cosh(t), -1.0);  // u^{-n/2}, n = 2
  const double h = std::sin(p.a * std::log(p.epsilon * std::cosh(t)));
  CHECK(psi(p, 2, t) == doctest::Approx(phi * h).epsilon(1e-13));
  CHECK(psi(p, 2, t) > 0.0);
}

TEST_CASE("product-rule identity holds to finite-difference accuracy") {
  const LeeParameters p2 = LeeParameters::make(2, 1e-3);
  CHECK(std::abs(identity_residual(p2, 2, 2.0, 1e-3)) < 1e-5);

  const LeeParameters p3 = LeeParameters::make(3, 1e-4);
  CHECK(std::abs(identity_residual(p3, 3, 5.0, 1e-3)) < 1e-5);
}

TEST_CASE("identity residual shrinks at second order in the step") {
  const LeeParameters p = LeeParameters::make(2, 1e-3);
  const double coarse = std::abs(identity_residual(p, 2, 2.0, 1e-3));
  const double fine = std::abs(identity_residual(p, 2, 2.0, 5e-4));
  CHECK(coarse / fine > 3.0);
  CHECK(coarse / fine < 5.0);
}

TEST_CASE("identity with constant angular factor reduces to the phi identity") {
  // -Delta phi / phi = n^2/4 + (n(n+2)/4) sech^2 t for phi = cosh^{-n/2},
  // via central differences
  const int n = 2;
  const double h = 1e-4;
  for (double t : {0.7, 1.5, 3.0}) {
    auto phi = [n](double s) { return std::pow(std::cosh(s), -0.5 * n); };
    const double lap = (phi(t + h) - 2.0 * phi(t) + phi(t - h)) / (h * h) +
                       n * (std::cosh(t) / std::sinh(t)) *
                           (phi(t + h) - phi(t - h)) / (2.0 * h);
    const double sech = 1.0 / std::cosh(t);
    const double closed = 0.25 * n * n + 0.25 * n * (n + 2) * sech * sech;
    CHECK(-lap / phi(t) == doctest::Approx(closed).epsilon(1e-6));
  }
}

TEST_CASE("cotangent bound over the whole region") {
  const LeeParameters p = LeeParameters::make(2, 1e-3);
  const double log_eps = std::log(p.epsilon);
  const double floor_angle = kPi + p.c_n / log_eps;
  const double rhs = -p.a * (std::cos(floor_angle) / std::sin(floor_angle));
  for (int j = 0; j < 2000; ++j) {
    const double u = 1.0 + (1.0 / p.epsilon - 1.0) * j / 2000.0;
    const double angle = p.a * std::log(p.epsilon * u);
    const double lhs = -p.a * (std::cos(angle) / std::sin(angle));
    CHECK(lhs >= rhs - 1e-12);
  }
}

TEST_CASE("pointwise check certifies small epsilon") {
  for (int n : {2, 3}) {
    for (double eps : {1e-3, 1e-4}) {
      const LeeParameters p = LeeParameters::make(n, eps);
      CHECK(pointwise_lower_bound_check(p, n, 10000) >= 0.0);
    }
  }
}

TEST_CASE("pointwise check reports without claiming at large epsilon") {
  // the operation returns the measured minimum either way
  const LeeParameters p = LeeParameters::make(2, 1e-1);
  const double margin = pointwise_lower_bound_check(p, 2, 10000);
  CHECK(std::isfinite(margin));
}

TEST_CASE("ball lower bound sandwiches the exact hyperbolic value") {
  // H^3: lambda_1 = 1 + pi^2/R^2 exactly
  const double R = 15.0;
  const double lower = ball_lower_bound(2, R);
  CHECK(lower > 1.0);
  CHECK(lower < 1.0 + kPi * kPi / (R * R));

  const double lam3 =
      first_eigenvalue(WarpedModel::sinh_ball(3), DomainSpec(20.0), 1e-10).lambda;
  const double lower3 = ball_lower_bound(3, 20.0);
  CHECK(lower3 < 2.25 + kPi * kPi / 400.0);
  CHECK(lower3 <= lam3 + 1e-9);
}

TEST_CASE("scaled gap of the lower bound stays bounded over a radius sweep") {
  for (double R : {10.0, 20.0, 30.0, 40.0}) {
    const double lower = ball_lower_bound(2, R);
    const double scaled = (lower - 1.0 - kPi * kPi / (R * R)) * R * R * R;
    CHECK(std::isfinite(scaled));
    CHECK(std::abs(scaled) < 300.0);
  }
}

TEST_CASE("full sandwich: lower bound, solver, quotient upper bound") {
  for (int n : {2, 3}) {
    for (double R : {10.0, 20.0}) {
      const double lower = ball_lower_bound(n, R);
      const double lam =
          first_eigenvalue(WarpedModel::sinh_ball(n), DomainSpec(R), 1e-10).lambda;
      const double upper = test_function_upper_bound(n, R).quotient_FG;
      CHECK(lower <= lam + 1e-9);
      CHECK(lam <= upper + 1e-9);
    }
  }
}
