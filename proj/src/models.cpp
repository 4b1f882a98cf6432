#include "sg/models.hpp"

#include <cmath>

namespace sg {

const char* warping_name(Warping w) {
  switch (w) {
    case Warping::Sinh: return "sinh";
    case Warping::Linear: return "linear";
    case Warping::Exp: return "exp";
    case Warping::Cosh: return "cosh";
  }
  return "?";
}

const char* domain_kind_name(DomainKind k) {
  return k == DomainKind::BallFromCenter ? "ball" : "band";
}

DomainSpec::DomainSpec(double r) : radius(r) {
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw std::invalid_argument("DomainSpec: radius must be positive and finite");
  }
}

WarpedModel::WarpedModel(int fiber_dim, Warping warping)
    : fiber_dim_(fiber_dim), warping_(warping) {
  if (fiber_dim < 1) {
    throw std::invalid_argument("WarpedModel: fiber_dim must be >= 1");
  }
  switch (warping) {
    case Warping::Sinh:
    case Warping::Linear:
      domain_kind_ = DomainKind::BallFromCenter;
      break;
    case Warping::Exp:
      domain_kind_ = DomainKind::SymmetricBand;
      break;
    case Warping::Cosh:
      if (fiber_dim != 2) {
        throw std::invalid_argument(
            "WarpedModel: cosh band requires fiber_dim = 2 (3-dimensional model)");
      }
      domain_kind_ = DomainKind::SymmetricBand;
      break;
  }
}

double WarpedModel::w(double t) const {
  switch (warping_) {
    case Warping::Sinh: return std::sinh(t);
    case Warping::Linear: return t;
    case Warping::Exp: return std::exp(t);
    case Warping::Cosh: return std::cosh(t);
  }
  return 0.0;
}

double WarpedModel::dw(double t) const {
  switch (warping_) {
    case Warping::Sinh: return std::cosh(t);
    case Warping::Linear: return 1.0;
    case Warping::Exp: return std::exp(t);
    case Warping::Cosh: return std::sinh(t);
  }
  return 0.0;
}

double WarpedModel::ddw(double t) const {
  switch (warping_) {
    case Warping::Sinh: return std::sinh(t);
    case Warping::Linear: return 0.0;
    case Warping::Exp: return std::exp(t);
    case Warping::Cosh: return std::cosh(t);
  }
  return 0.0;
}

double WarpedModel::drift_coefficient(double t) const {
  if (domain_kind_ == DomainKind::BallFromCenter && !(t > 0.0)) {
    throw std::domain_error("drift_coefficient: ball domains require t > 0");
  }
  if (!std::isfinite(t)) {
    throw std::domain_error("drift_coefficient: t must be finite");
  }
  return fiber_dim_ * dw(t) / w(t);
}

double WarpedModel::volume_density(double t) const {
  if (domain_kind_ == DomainKind::BallFromCenter && t < 0.0) {
    throw std::domain_error("volume_density: ball domains require t >= 0");
  }
  if (!std::isfinite(t)) {
    throw std::domain_error("volume_density: t must be finite");
  }
  return std::pow(w(t), fiber_dim_);
}

double WarpedModel::t_min(const DomainSpec& spec) const {
  return domain_kind_ == DomainKind::BallFromCenter ? 0.0 : -spec.radius;
}

double WarpedModel::t_max(const DomainSpec& spec) const {
  return spec.radius;
}

std::string WarpedModel::name() const {
  return std::string(warping_name(warping_)) + "-" + domain_kind_name(domain_kind_);
}

WarpedModel WarpedModel::sinh_ball(int fiber_dim) {
  return WarpedModel(fiber_dim, Warping::Sinh);
}
WarpedModel WarpedModel::linear_ball(int fiber_dim) {
  return WarpedModel(fiber_dim, Warping::Linear);
}
WarpedModel WarpedModel::exp_band(int fiber_dim) {
  return WarpedModel(fiber_dim, Warping::Exp);
}
WarpedModel WarpedModel::cosh_band() {
  return WarpedModel(2, Warping::Cosh);
}

WarpedModel WarpedModel::from_name(const std::string& name, int fiber_dim) {
  if (name == "sinh-ball") return sinh_ball(fiber_dim);
  if (name == "linear-ball") return linear_ball(fiber_dim);
  if (name == "exp-band") return exp_band(fiber_dim);
  if (name == "cosh-band") {
    if (fiber_dim != 2) {
      throw std::invalid_argument(
          "WarpedModel: cosh band requires fiber_dim = 2 (3-dimensional model)");
    }
    return cosh_band();
  }
  throw std::invalid_argument("unknown model name: " + name);
}

}  // namespace sg
