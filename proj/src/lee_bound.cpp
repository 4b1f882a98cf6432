#include "sg/lee_bound.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace sg {
namespace {

constexpr double kPi = std::numbers::pi;

double cot(double x) { return std::cos(x) / std::sin(x); }

void validate_n(int n) {
  if (n < 1) throw std::invalid_argument("lee_bound: requires n >= 1");
}

}  // namespace

double minimal_c_n(int n) {
  validate_n(n);
  return 4.0 * kPi * (n + 1) / (static_cast<double>(n) * (n + 2));
}

LeeParameters LeeParameters::make(int n, double epsilon, double c_n) {
  validate_n(n);
  if (!(epsilon > 0.0) || !(epsilon < 1.0)) {
    throw std::invalid_argument("LeeParameters: epsilon must lie in (0, 1)");
  }
  if (c_n < minimal_c_n(n)) {
    throw std::invalid_argument("LeeParameters: c_n below its admissible minimum " +
                                std::to_string(minimal_c_n(n)));
  }
  const double log_eps = std::log(epsilon);
  LeeParameters p;
  p.epsilon = epsilon;
  p.c_n = c_n;
  p.a = kPi / log_eps + c_n / (log_eps * log_eps);
  if (!(p.a < 0.0)) {
    throw std::invalid_argument("LeeParameters: derived a is not negative; "
                                "epsilon is too large for this c_n");
  }
  // angle at u = 1 must stay below pi
  if (!(p.a * log_eps > 0.0 && p.a * log_eps < kPi)) {
    throw std::invalid_argument("LeeParameters: angle range leaves (0, pi)");
  }
  return p;
}

LeeParameters LeeParameters::make(int n, double epsilon) {
  return make(n, epsilon, minimal_c_n(n));
}

double LeeEigenfunction::value(double t) const { return std::cosh(t); }
double LeeEigenfunction::derivative(double t) const { return std::sinh(t); }

double LeeEigenfunction::laplace_residual(int n, double t) const {
  if (!(t > 0.0)) {
    throw std::domain_error("laplace_residual: requires t > 0");
  }
  const double u = std::cosh(t);
  const double du = std::sinh(t);
  // normalized by u so the residual stays meaningful where cosh t is huge
  return (u + n * (u / du) * du - (n + 1) * u) / u;
}

double region_half_width(double epsilon) {
  if (!(epsilon > 0.0) || !(epsilon < 1.0)) {
    throw std::invalid_argument("region_half_width: epsilon must lie in (0, 1)");
  }
  return std::acosh(1.0 / epsilon);
}

namespace {

double angle_at(const LeeParameters& params, double t) {
  return params.a * std::log(params.epsilon * std::cosh(t));
}

}  // namespace

double psi(const LeeParameters& params, int n, double t) {
  validate_n(n);
  if (t < 0.0 || std::cosh(t) >= 1.0 / params.epsilon) {
    throw std::domain_error("psi: point lies outside the sublevel region");
  }
  return std::pow(std::cosh(t), -0.5 * n) * std::sin(angle_at(params, t));
}

double pointwise_margin(const LeeParameters& params, int n, double t) {
  validate_n(n);
  const double angle = angle_at(params, t);
  if (!(angle > 0.0) || !(angle < kPi)) {
    throw std::domain_error("pointwise_margin: cot argument outside (0, pi)");
  }
  const double sech = 1.0 / std::cosh(t);
  const double bracket = 0.25 * n * (n + 2) - (n + 1) * params.a * cot(angle) -
                         params.a * params.a;
  return sech * sech * bracket;
}

double identity_residual(const LeeParameters& params, int n, double t,
                         double h_step) {
  validate_n(n);
  if (!(h_step > 1e-6) || !(h_step < 1e-2)) {
    throw std::invalid_argument("identity_residual: h_step must lie in (1e-6, 1e-2)");
  }
  const double t_edge = region_half_width(params.epsilon);
  if (!(t > 2.0 * h_step) || !(t < t_edge - 2.0 * h_step)) {
    throw std::domain_error("identity_residual: t too close to the region boundary");
  }

  const double p0 = psi(params, n, t);
  const double pm = psi(params, n, t - h_step);
  const double pp = psi(params, n, t + h_step);
  const double lap = (pp - 2.0 * p0 + pm) / (h_step * h_step) +
                     n * (std::cosh(t) / std::sinh(t)) * (pp - pm) / (2.0 * h_step);
  const double left = -lap / p0;
  const double right = 0.25 * n * n + params.a * params.a +
                       pointwise_margin(params, n, t);
  return left - right;
}

double pointwise_lower_bound_check(const LeeParameters& params, int n,
                                   int grid_points) {
  validate_n(n);
  if (grid_points < 2) {
    throw std::invalid_argument("pointwise_lower_bound_check: need >= 2 grid points");
  }
  const double t_edge = region_half_width(params.epsilon);
  double min_margin = std::numeric_limits<double>::infinity();
  for (int j = 0; j < grid_points; ++j) {
    const double t = t_edge * j / grid_points;  // [0, t_edge), boundary excluded
    min_margin = std::min(min_margin, pointwise_margin(params, n, t));
  }
  return min_margin;
}

double ball_lower_bound(int n, double R) {
  validate_n(n);
  if (!(R > 0.0)) {
    throw std::invalid_argument("ball_lower_bound: requires R > 0");
  }
  const double epsilon = 1.0 / std::cosh(R);
  const LeeParameters params = LeeParameters::make(n, epsilon);
  const double min_margin = pointwise_lower_bound_check(params, n, 10000);
  if (min_margin < 0.0) {
    throw std::runtime_error(
        "ball_lower_bound: bound not certified at this radius (pointwise minimum " +
        std::to_string(min_margin) + ")");
  }
  return 0.25 * n * n + params.a * params.a;
}

}  // namespace sg
