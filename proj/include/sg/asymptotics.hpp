#pragma once

#include <vector>

#include "sg/models.hpp"

namespace sg {

struct ExpansionFit {
  double c0 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;
  bool has_c3 = false;
  double residual_norm = 0.0;      // rms of fit residuals
  double condition_estimate = 0.0;  // of the design matrix
  int sample_count = 0;
  bool condition_warning = false;  // condition estimate above 1e12
};

// Least-squares fit of lambda(R) = sum_p c_p R^{-p} over the given powers,
// a subset of {0, 2, 3} containing 0 and 2. Requires >= 4 samples with
// distinct R. Rank-deficient designs throw; an ill-conditioned design sets
// condition_warning and still returns.
ExpansionFit fit_expansion(const std::vector<std::pair<double, double>>& samples,
                           const std::vector<int>& powers);

struct TwoTermReport {
  ExpansionFit fit;
  double c0_target;
  double c2_target;
  double c0_tol;  // the tol argument
  double c2_tol;  // 5% of the target
  bool c0_pass;
  bool c2_pass;
  std::vector<double> scaled_residuals;  // (lambda - c0t - c2t/R^2) R^3 per radius
  double max_scaled_residual;            // max magnitude
  std::vector<std::pair<double, double>> samples;  // (R, lambda)
};

// Runs the shooting solver across the radii, fits {1, R^-2, R^-3}, and
// compares c0 and c2 against the model's expected leading coefficients
// (c0 = n^2/4; c2 = pi^2 for balls, pi^2/4 for bands). Radii must be
// ascending, at least 5, with max >= 2 * min.
TwoTermReport two_term_report(const WarpedModel& model,
                              const std::vector<double>& radii, double tol);

}  // namespace sg
