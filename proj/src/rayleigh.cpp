#include "sg/rayleigh.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sg/quadrature.hpp"

namespace sg {
namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

double rayleigh_quotient(const WarpedModel& model, const DomainSpec& spec,
                         const RadialFunction& f) {
  const double a = model.t_min(spec);
  const double b = model.t_max(spec);

  double sup = 0.0;
  const int samples = 1024;
  for (int i = 0; i <= samples; ++i) {
    sup = std::max(sup, std::abs(f.value(a + (b - a) * i / samples)));
  }
  if (!(sup > 0.0)) {
    throw std::invalid_argument("rayleigh_quotient: test function is identically zero");
  }
  const bool ball = model.domain_kind() == DomainKind::BallFromCenter;
  if (std::abs(f.value(b)) / sup >= 1e-12 ||
      (!ball && std::abs(f.value(a)) / sup >= 1e-12)) {
    throw std::invalid_argument(
        "rayleigh_quotient: test function must vanish at the Dirichlet boundary");
  }

  QuadratureOptions opts;
  opts.rel_tol = 1e-11;
  const double num = integrate(
      [&](double t) {
        const double fp = f.derivative(t);
        return fp * fp * model.volume_density(t);
      },
      a, b, opts);
  const double den = integrate(
      [&](double t) {
        const double v = f.value(t);
        return v * v * model.volume_density(t);
      },
      a, b, opts);
  if (!(den > 0.0)) {
    throw std::invalid_argument("rayleigh_quotient: zero denominator");
  }
  return num / den;
}

double quotient_F(int n, double R) {
  QuadratureOptions opts;
  opts.rel_tol = 1e-11;
  return integrate(
      [n, R](double theta) {
        const double layer = 1.0 - std::exp(-2.0 * R * theta / kPi);
        const double amp = -0.5 * n * std::sin(theta) + (kPi / R) * std::cos(theta);
        return std::pow(layer, n) * amp * amp;
      },
      0.0, kPi, opts);
}

double quotient_G(int n, double R) {
  QuadratureOptions opts;
  opts.rel_tol = 1e-11;
  return integrate(
      [n, R](double theta) {
        const double layer = 1.0 - std::exp(-2.0 * R * theta / kPi);
        const double s = std::sin(theta);
        return std::pow(layer, n) * s * s;
      },
      0.0, kPi, opts);
}

UpperBoundReport test_function_upper_bound(int n, double R) {
  if (n < 1 || R < 1.0) {
    throw std::invalid_argument("test_function_upper_bound: need n >= 1, R >= 1");
  }
  UpperBoundReport report;
  report.R = R;
  report.F_value = quotient_F(n, R);
  report.G_value = quotient_G(n, R);
  report.quotient_FG = report.F_value / report.G_value;
  report.three_term = 0.25 * n * n + kPi * kPi / (R * R) +
                      0.125 * n * n * kPi * kPi * alternating_binomial_sum(n) /
                          (R * R * R);
  return report;
}

double sin2_exp_integral(double r) {
  if (!(r > 0.0)) {
    throw std::domain_error("sin2_exp_integral: requires r > 0");
  }
  return 2.0 * (1.0 - std::exp(-kPi * r)) / (r * (r * r + 4.0));
}

double alternating_binomial_sum(int n) {
  if (n < 1) {
    throw std::invalid_argument("alternating_binomial_sum: requires n >= 1");
  }
  using boost::multiprecision::cpp_int;
  // sum of C(n,k) (-1)^{k+1} / k^3 over a common denominator (n!)^3
  cpp_int factorial = 1;
  for (int k = 2; k <= n; ++k) factorial *= k;
  const cpp_int denom = factorial * factorial * factorial;

  cpp_int numer = 0;
  cpp_int binom = 1;  // C(n,0)
  for (int k = 1; k <= n; ++k) {
    binom = binom * (n - k + 1) / k;
    const cpp_int k3 = cpp_int(k) * k * k;
    cpp_int term = binom * (denom / k3);
    numer += (k % 2 == 1) ? term : -term;
  }
  // emit as real via a single final division
  return static_cast<double>(
      boost::multiprecision::cpp_bin_float_100(numer) /
      boost::multiprecision::cpp_bin_float_100(denom));
}

double g_tail_residual(int n, double R) {
  if (n < 1 || !(R > 0.0)) {
    throw std::invalid_argument("g_tail_residual: requires n >= 1, R > 0");
  }
  const double g = quotient_G(n, R);
  return (kPi / 2.0 - g) * R * R * R -
         (kPi * kPi * kPi / 4.0) * alternating_binomial_sum(n);
}

}  // namespace sg
