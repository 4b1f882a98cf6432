#pragma once

#include <functional>

namespace sg {

struct QuadratureOptions {
  double rel_tol = 1e-11;
  double abs_tol = 1e-300;
  long max_panels = 1000000;
};

// Globally adaptive Gauss-Kronrod 7/15 quadrature over [a, b].
// Intervals are split by largest error estimate first. Throws
// std::runtime_error if the panel cap is exhausted before convergence.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opts = {});

}  // namespace sg
