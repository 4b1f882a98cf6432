#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <utility>

namespace sg {

// Closed set of warping functions w(t) of the metric dt^2 + w(t)^2 g_fiber.
enum class Warping { Sinh, Linear, Exp, Cosh };

enum class DomainKind { BallFromCenter, SymmetricBand };

const char* warping_name(Warping w);
const char* domain_kind_name(DomainKind k);

struct DomainSpec {
  double radius;  // geodesic radius of the ball, or half-width of the band

  explicit DomainSpec(double r);
};

// Rotationally symmetric model geometry. The fiber manifold enters only
// through its dimension n; the ambient dimension is n+1.
class WarpedModel {
 public:
  WarpedModel(int fiber_dim, Warping warping);

  int fiber_dim() const { return fiber_dim_; }
  Warping warping() const { return warping_; }
  DomainKind domain_kind() const { return domain_kind_; }

  // w, w', w'' in closed form.
  double w(double t) const;
  double dw(double t) const;
  double ddw(double t) const;

  // n * w'(t)/w(t); the radial Laplacian is f'' + drift * f'.
  // Balls refuse t <= 0 (the coefficient is singular at the center).
  double drift_coefficient(double t) const;

  // w(t)^n, the radial measure weight. Angular constants are dropped;
  // they cancel in every quotient this library forms.
  double volume_density(double t) const;

  // Domain interval [t_min, t_max] for a given radius.
  double t_min(const DomainSpec& spec) const;
  double t_max(const DomainSpec& spec) const;

  std::string name() const;

  static WarpedModel sinh_ball(int fiber_dim);
  static WarpedModel linear_ball(int fiber_dim);
  static WarpedModel exp_band(int fiber_dim);
  static WarpedModel cosh_band();  // fiber_dim fixed to 2

  // Parses "sinh-ball", "linear-ball", "exp-band", "cosh-band".
  static WarpedModel from_name(const std::string& name, int fiber_dim);

 private:
  int fiber_dim_;
  Warping warping_;
  DomainKind domain_kind_;
};

// A radial scalar field t -> (value, first derivative). The common currency
// of test functions and eigenfunctions.
struct RadialFunction {
  std::function<std::pair<double, double>(double)> eval;
  std::string tag;

  double value(double t) const { return eval(t).first; }
  double derivative(double t) const { return eval(t).second; }
};

}  // namespace sg
