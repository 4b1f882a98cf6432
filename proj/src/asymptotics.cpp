#include "sg/asymptotics.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

#include "sg/radial_solver.hpp"

namespace sg {
namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

ExpansionFit fit_expansion(const std::vector<std::pair<double, double>>& samples,
                           const std::vector<int>& powers) {
  const int m = static_cast<int>(samples.size());
  const int k = static_cast<int>(powers.size());
  if (m < 4) {
    throw std::invalid_argument("fit_expansion: need at least 4 samples");
  }
  if (m < k + 1) {
    throw std::invalid_argument("fit_expansion: need more samples than coefficients");
  }
  std::set<int> pset(powers.begin(), powers.end());
  if (pset.size() != powers.size() || !pset.count(0) || !pset.count(2) ||
      !std::all_of(powers.begin(), powers.end(),
                   [](int p) { return p == 0 || p == 2 || p == 3; })) {
    throw std::invalid_argument(
        "fit_expansion: powers must be a subset of {0,2,3} containing 0 and 2");
  }
  std::set<double> distinct;
  for (const auto& [r, lam] : samples) {
    if (!(r > 0.0) || !std::isfinite(lam)) {
      throw std::invalid_argument("fit_expansion: samples must have R > 0, finite lambda");
    }
    distinct.insert(r);
  }
  if (static_cast<int>(distinct.size()) != m) {
    throw std::invalid_argument("fit_expansion: duplicated R makes the design rank deficient");
  }

  Eigen::MatrixXd design(m, k);
  Eigen::VectorXd rhs(m);
  for (int i = 0; i < m; ++i) {
    rhs(i) = samples[i].second;
    for (int j = 0; j < k; ++j) {
      design(i, j) = std::pow(samples[i].first, -powers[j]);
    }
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(design,
                                        Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  if (sv(k - 1) <= 0.0 || !std::isfinite(sv(0))) {
    throw std::invalid_argument("fit_expansion: rank-deficient design matrix");
  }
  const Eigen::VectorXd coeffs = svd.solve(rhs);
  const Eigen::VectorXd resid = design * coeffs - rhs;

  ExpansionFit fit;
  fit.sample_count = m;
  fit.residual_norm = std::sqrt(resid.squaredNorm() / m);
  fit.condition_estimate = sv(0) / sv(k - 1);
  fit.condition_warning = fit.condition_estimate > 1e12;
  for (int j = 0; j < k; ++j) {
    switch (powers[j]) {
      case 0: fit.c0 = coeffs(j); break;
      case 2: fit.c2 = coeffs(j); break;
      case 3:
        fit.c3 = coeffs(j);
        fit.has_c3 = true;
        break;
    }
  }
  return fit;
}

TwoTermReport two_term_report(const WarpedModel& model,
                              const std::vector<double>& radii, double tol) {
  if (radii.size() < 5) {
    throw std::invalid_argument("two_term_report: need at least 5 radii");
  }
  if (!std::is_sorted(radii.begin(), radii.end())) {
    throw std::invalid_argument("two_term_report: radii must be ascending");
  }
  if (!(radii.back() >= 2.0 * radii.front())) {
    throw std::invalid_argument("two_term_report: max radius must be >= 2x min radius");
  }

  TwoTermReport report;
  const int n = model.fiber_dim();
  report.c0_target = 0.25 * n * n;
  report.c2_target = (model.domain_kind() == DomainKind::BallFromCenter)
                         ? kPi * kPi
                         : 0.25 * kPi * kPi;
  report.c0_tol = tol;
  report.c2_tol = 0.05 * report.c2_target;

  for (double r : radii) {
    const EigenEstimate est = first_eigenvalue(model, DomainSpec(r), 1e-10);
    report.samples.emplace_back(r, est.lambda);
  }

  report.fit = fit_expansion(report.samples, {0, 2, 3});
  report.c0_pass = std::abs(report.fit.c0 - report.c0_target) <= report.c0_tol;
  report.c2_pass = std::abs(report.fit.c2 - report.c2_target) <= report.c2_tol;

  report.max_scaled_residual = 0.0;
  for (const auto& [r, lam] : report.samples) {
    const double scaled =
        (lam - report.c0_target - report.c2_target / (r * r)) * r * r * r;
    report.scaled_residuals.push_back(scaled);
    report.max_scaled_residual =
        std::max(report.max_scaled_residual, std::abs(scaled));
  }
  return report;
}

}  // namespace sg
