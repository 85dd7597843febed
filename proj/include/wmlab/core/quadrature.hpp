#pragma once

#include <functional>
#include <initializer_list>
#include <span>

namespace wmlab {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;  // estimated absolute error
  double l1 = 0.0;     // integral of |f|
};

struct QuadratureTolerance {
  double abs = 1e-12;
  double rel = 1e-10;
};

// Adaptive Gauss-Kronrod (7/15) integration of f over [a, b]. `b` may be
// +infinity. Throws ConvergenceError when the estimated error exceeds
// max(tol.abs, tol.rel * |value|).
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           QuadratureTolerance tol = {});

// Same, splitting [a, b] at the given interior breakpoints (sorted or not);
// breakpoints outside (a, b) are ignored.
QuadratureResult integrate_piecewise(const std::function<double(double)>& f, double a, double b,
                                     std::span<const double> breakpoints,
                                     QuadratureTolerance tol = {});

}  // namespace wmlab
