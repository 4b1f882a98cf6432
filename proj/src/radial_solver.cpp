#include "sg/radial_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace sg {
namespace {

constexpr double kPi = std::numbers::pi;

// Polar (Pruefer) state of the radial equation f'' + b(t) f' + lambda f = 0
// with f = rho sin(theta), f' = rho cos(theta):
//   theta'   = cos^2 + lambda sin^2 + b sin cos
//   (ln rho)' = (1 - lambda) sin cos - b cos^2
// theta crosses multiples of pi only upward (theta' = 1 there), so the zero
// structure of f is read off the final angle.
struct PolarState {
  double theta;
  double log_rho;
};

struct Rhs {
  const WarpedModel* model;
  double lambda;

  PolarState operator()(double t, const PolarState& y) const {
    const double s = std::sin(y.theta);
    const double c = std::cos(y.theta);
    const double b = model->drift_coefficient(t);
    return {c * c + lambda * s * s + b * s * c,
            (1.0 - lambda) * s * c - b * c * c};
  }
};

PolarState axpy(const PolarState& y, double h, double a1, const PolarState& k1,
                double a2 = 0, const PolarState& k2 = {}, double a3 = 0,
                const PolarState& k3 = {}, double a4 = 0, const PolarState& k4 = {},
                double a5 = 0, const PolarState& k5 = {}, double a6 = 0,
                const PolarState& k6 = {}) {
  return {y.theta + h * (a1 * k1.theta + a2 * k2.theta + a3 * k3.theta +
                         a4 * k4.theta + a5 * k5.theta + a6 * k6.theta),
          y.log_rho + h * (a1 * k1.log_rho + a2 * k2.log_rho + a3 * k3.log_rho +
                           a4 * k4.log_rho + a5 * k5.log_rho + a6 * k6.log_rho)};
}

// Dormand-Prince 5(4) with standard step control. Calls `observe` after
// every accepted step. Integrates exactly to t_end.
template <typename Observer>
PolarState integrate_polar(const Rhs& rhs, double t0, double t_end, PolarState y,
                           Observer&& observe) {
  constexpr double rtol = 1e-12;
  constexpr double atol = 1e-14;
  const double span = t_end - t0;
  if (span <= 0.0) return y;

  double t = t0;
  double h = std::min(span, 1e-3 * span + 1e-6);
  const double h_min = 1e-15 * span;
  PolarState k1 = rhs(t, y);

  while (t < t_end) {
    if (t + h > t_end) h = t_end - t;

    const PolarState k2 = rhs(t + h / 5.0, axpy(y, h, 1.0 / 5.0, k1));
    const PolarState k3 =
        rhs(t + 3.0 * h / 10.0, axpy(y, h, 3.0 / 40.0, k1, 9.0 / 40.0, k2));
    const PolarState k4 = rhs(
        t + 4.0 * h / 5.0,
        axpy(y, h, 44.0 / 45.0, k1, -56.0 / 15.0, k2, 32.0 / 9.0, k3));
    const PolarState k5 =
        rhs(t + 8.0 * h / 9.0,
            axpy(y, h, 19372.0 / 6561.0, k1, -25360.0 / 2187.0, k2,
                 64448.0 / 6561.0, k3, -212.0 / 729.0, k4));
    const PolarState k6 =
        rhs(t + h, axpy(y, h, 9017.0 / 3168.0, k1, -355.0 / 33.0, k2,
                        46732.0 / 5247.0, k3, 49.0 / 176.0, k4,
                        -5103.0 / 18656.0, k5));
    const PolarState y5 =
        axpy(y, h, 35.0 / 384.0, k1, 0.0, k2, 500.0 / 1113.0, k3,
             125.0 / 192.0, k4, -2187.0 / 6784.0, k5, 11.0 / 84.0, k6);
    const PolarState k7 = rhs(t + h, y5);

    // embedded 4th-order difference
    const double e_theta =
        h * ((35.0 / 384.0 - 5179.0 / 57600.0) * k1.theta +
             (500.0 / 1113.0 - 7571.0 / 16695.0) * k3.theta +
             (125.0 / 192.0 - 393.0 / 640.0) * k4.theta +
             (-2187.0 / 6784.0 + 92097.0 / 339200.0) * k5.theta +
             (11.0 / 84.0 - 187.0 / 2100.0) * k6.theta +
             (0.0 - 1.0 / 40.0) * k7.theta);
    const double e_rho =
        h * ((35.0 / 384.0 - 5179.0 / 57600.0) * k1.log_rho +
             (500.0 / 1113.0 - 7571.0 / 16695.0) * k3.log_rho +
             (125.0 / 192.0 - 393.0 / 640.0) * k4.log_rho +
             (-2187.0 / 6784.0 + 92097.0 / 339200.0) * k5.log_rho +
             (11.0 / 84.0 - 187.0 / 2100.0) * k6.log_rho +
             (0.0 - 1.0 / 40.0) * k7.log_rho);

    const double sc_theta = atol + rtol * std::max(std::abs(y.theta), std::abs(y5.theta));
    const double sc_rho = atol + rtol * std::max(std::abs(y.log_rho), std::abs(y5.log_rho));
    const double err = std::sqrt(0.5 * ((e_theta / sc_theta) * (e_theta / sc_theta) +
                                        (e_rho / sc_rho) * (e_rho / sc_rho)));

    if (err <= 1.0) {
      t += h;
      y = y5;
      k1 = k7;  // FSAL
      observe(t, y);
    }
    const double factor =
        std::clamp(0.9 * std::pow(std::max(err, 1e-10), -0.2), 0.2, 5.0);
    h *= factor;
    if (h < h_min) {
      throw std::runtime_error(
          "shoot: integration step underflow at t = " + std::to_string(t));
    }
  }
  return y;
}

struct Launch {
  double t_start;
  PolarState y;
};

// Regular-end start data. Ball domains use the two-term series solution of
// the limiting equation f'' + (n/t) f' + lambda f = 0 at a point t0 just off
// the center, which removes the coth singularity with O(t0^4) start error.
Launch launch_point(const WarpedModel& model, const DomainSpec& spec, double lambda) {
  if (model.domain_kind() == DomainKind::BallFromCenter) {
    const double t0 = std::max(1e-6, 1e-8 * spec.radius);
    const int n = model.fiber_dim();
    const double f = 1.0 - lambda * t0 * t0 / (2.0 * (n + 1));
    const double fp = -lambda * t0 / (n + 1);
    return {t0, {std::atan2(f, fp), 0.5 * std::log(f * f + fp * fp)}};
  }
  // band: f(-R) = 0, f'(-R) = 1
  return {-spec.radius, {0.0, 0.0}};
}

int raw_zero_count(double theta_end) {
  return std::max(0, static_cast<int>(std::floor(theta_end / kPi)));
}

}  // namespace

ShootResult shoot(const WarpedModel& model, const DomainSpec& spec, double lambda) {
  if (!std::isfinite(lambda)) {
    throw std::invalid_argument("shoot: lambda must be finite");
  }
  const Rhs rhs{&model, lambda};
  const Launch start = launch_point(model, spec, lambda);

  double v_max = -std::numeric_limits<double>::infinity();
  auto track_max = [&v_max](double /*t*/, const PolarState& y) {
    const double s = std::abs(std::sin(y.theta));
    if (s > 0.0) v_max = std::max(v_max, y.log_rho + std::log(s));
  };
  track_max(start.t_start, start.y);

  const PolarState end = integrate_polar(rhs, start.t_start, model.t_max(spec),
                                         start.y, track_max);

  const double s_end = std::sin(end.theta);
  double value = 0.0;
  if (s_end != 0.0 && std::isfinite(v_max)) {
    value = std::copysign(std::exp(end.log_rho + std::log(std::abs(s_end)) - v_max),
                          s_end);
  }

  // A boundary zero (theta_end on a multiple of pi to within integration
  // accuracy) is not an interior zero.
  const double snapped = end.theta - 1e-6;
  return {value, std::max(0, static_cast<int>(std::floor(snapped / kPi))), end.theta};
}

EigenEstimate first_eigenvalue(const WarpedModel& model, const DomainSpec& spec,
                               double tol) {
  if (!(tol > 0.0)) {
    throw std::invalid_argument("first_eigenvalue: tol must be positive");
  }
  const int n = model.fiber_dim();
  const double ceiling = 0.25 * n * n + kPi * kPi + 10.0;

  auto angle = [&](double lambda) { return shoot(model, spec, lambda).theta_end; };

  double lo = 0.0;
  double theta_lo = angle(lo);
  if (theta_lo >= kPi) {
    throw std::runtime_error("first_eigenvalue: nonpositive eigenvalue bracket");
  }

  double hi = 0.5;
  double theta_hi = angle(hi);
  while (theta_hi < kPi) {
    lo = hi;
    theta_lo = theta_hi;
    hi *= 2.0;
    if (hi > ceiling) {
      throw std::runtime_error(
          "first_eigenvalue: no bracket found below search ceiling " +
          std::to_string(ceiling));
    }
    theta_hi = angle(hi);
  }

  bool warning = false;
  const double achievable = 1e-12 * std::max(1.0, hi);
  double effective_tol = tol;
  if (tol < achievable) {
    warning = true;  // best-effort bracket below integration accuracy
    effective_tol = achievable;
  }

  int iter = 0;
  while (hi - lo > effective_tol && iter < 200) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (angle(mid) < kPi) {
      lo = mid;
    } else {
      hi = mid;
    }
    ++iter;
  }

  EigenEstimate est;
  est.lambda_low = lo;
  est.lambda_high = hi;
  est.lambda = 0.5 * (lo + hi);
  est.endpoint_residual = shoot(model, spec, est.lambda).endpoint_value;
  est.zero_count_low = raw_zero_count(angle(lo));
  est.zero_count_high = raw_zero_count(angle(hi));
  est.tolerance_warning = warning;
  return est;
}

namespace {

// Eigenvalue count below x for a symmetric tridiagonal matrix (Sturm/LDL^T).
int sturm_count(const std::vector<double>& diag, const std::vector<double>& off,
                double x) {
  int count = 0;
  double q = diag[0] - x;
  if (q < 0.0) ++count;
  for (size_t i = 1; i < diag.size(); ++i) {
    if (q == 0.0) q = -std::numeric_limits<double>::min();
    q = diag[i] - x - off[i - 1] * off[i - 1] / q;
    if (q < 0.0) ++count;
  }
  return count;
}

double gauss4_integral(const WarpedModel& model, double a, double b) {
  static const double x[2] = {0.3399810435848563, 0.8611363115940526};
  static const double w[2] = {0.6521451548625461, 0.3478548451374538};
  const double c = 0.5 * (a + b), half = 0.5 * (b - a);
  double sum = 0.0;
  for (int i = 0; i < 2; ++i) {
    sum += w[i] * (model.volume_density(c - half * x[i]) +
                   model.volume_density(c + half * x[i]));
  }
  return sum * half;
}

}  // namespace

double fd_oracle(const WarpedModel& model, const DomainSpec& spec, int mesh_points) {
  if (mesh_points < 100) {
    throw std::invalid_argument("fd_oracle: mesh_points must be >= 100");
  }
  const double a = model.t_min(spec);
  const double b = model.t_max(spec);
  const int m = mesh_points;
  const double h = (b - a) / m;
  const bool ball = model.domain_kind() == DomainKind::BallFromCenter;

  // Unknowns at nodes t_i = a + i h: bands exclude both Dirichlet endpoints,
  // balls keep the center node (natural condition, zero flux since w^n(0)=0).
  const int first = ball ? 0 : 1;
  const int count = m - first;  // last unknown index m-1, f(t_m) = 0

  std::vector<double> stiff_diag(count), stiff_off(count - 1), mass(count);
  std::vector<double> face(m + 1);  // w^n at half-points t = a + (i+1/2) h
  for (int i = 0; i <= m - 1; ++i) face[i] = model.volume_density(a + (i + 0.5) * h);

  for (int k = 0; k < count; ++k) {
    const int i = first + k;
    const double t = a + i * h;
    const double w_left = (i == 0) ? 0.0 : face[i - 1];
    const double w_right = face[i];
    stiff_diag[k] = (w_left + w_right) / h;
    if (k + 1 < count) stiff_off[k] = -w_right / h;
    if (ball && i == 0) {
      mass[k] = gauss4_integral(model, 0.0, 0.5 * h);
    } else {
      mass[k] = h * model.volume_density(t);
    }
    if (!(mass[k] > 0.0) || !std::isfinite(stiff_diag[k])) {
      throw std::runtime_error("fd_oracle: mesh too coarse or degenerate weight");
    }
  }

  // symmetrized B^{-1/2} A B^{-1/2}
  std::vector<double> diag(count), off(count - 1);
  for (int k = 0; k < count; ++k) diag[k] = stiff_diag[k] / mass[k];
  for (int k = 0; k + 1 < count; ++k) {
    off[k] = stiff_off[k] / std::sqrt(mass[k] * mass[k + 1]);
  }

  double hi = 0.0;
  for (int k = 0; k < count; ++k) {
    double g = diag[k];
    if (k > 0) g += std::abs(off[k - 1]);
    if (k + 1 < count) g += std::abs(off[k]);
    hi = std::max(hi, g);
  }
  double lo = 0.0;
  for (int iter = 0; iter < 200 && hi - lo > 1e-13 * std::max(1.0, hi); ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (sturm_count(diag, off, mid) >= 1) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<std::pair<double, double>> eigenfunction_samples(
    const WarpedModel& model, const DomainSpec& spec, double lambda,
    int grid_points) {
  if (grid_points < 2) {
    throw std::invalid_argument("eigenfunction_samples: need >= 2 grid points");
  }
  const ShootResult check = shoot(model, spec, lambda);
  if (std::abs(check.endpoint_value) > 1e-6) {
    throw std::invalid_argument(
        "eigenfunction_samples: lambda is not near an eigenvalue (endpoint "
        "residual " +
        std::to_string(check.endpoint_value) + ")");
  }

  const double a = model.t_min(spec);
  const double b = model.t_max(spec);
  const Rhs rhs{&model, lambda};
  const Launch start = launch_point(model, spec, lambda);

  std::vector<std::pair<double, double>> samples(grid_points);
  std::vector<double> raw(grid_points, 0.0);
  for (int j = 0; j < grid_points; ++j) {
    samples[j].first = a + (b - a) * j / (grid_points - 1);
  }

  // Work in log amplitude until the end so large bands cannot overflow.
  std::vector<PolarState> states(grid_points, start.y);
  PolarState y = start.y;
  double t = start.t_start;
  for (int j = 1; j < grid_points; ++j) {
    const double target = samples[j].first;
    if (target > t) {
      y = integrate_polar(rhs, t, target, y, [](double, const PolarState&) {});
      t = target;
    }
    states[j] = y;
  }

  double log_peak = -std::numeric_limits<double>::infinity();
  const bool ball = model.domain_kind() == DomainKind::BallFromCenter;
  for (int j = ball ? 0 : 1; j < grid_points; ++j) {
    const double s = std::sin(states[j].theta);
    if (s > 0.0) log_peak = std::max(log_peak, states[j].log_rho + std::log(s));
  }
  if (!std::isfinite(log_peak)) {
    throw std::runtime_error("eigenfunction_samples: degenerate solution");
  }
  // node 0: ball center value f = 1 (series start), band endpoint f = 0
  raw[0] = ball ? std::exp(start.y.log_rho + std::log(std::sin(start.y.theta)) -
                           log_peak)
                : 0.0;
  for (int j = 1; j < grid_points; ++j) {
    raw[j] = std::sin(states[j].theta) * std::exp(states[j].log_rho - log_peak);
  }

  const double peak = *std::max_element(raw.begin(), raw.end());
  if (!(peak > 0.0)) {
    throw std::runtime_error("eigenfunction_samples: degenerate solution");
  }
  for (int j = 0; j < grid_points; ++j) samples[j].second = raw[j] / peak;
  return samples;
}

}  // namespace sg
