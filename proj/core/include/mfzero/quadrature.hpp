#pragma once

#include <functional>

namespace mfzero {

struct QuadResult {
  double value = 0;
  double error = 0;  // estimated absolute error, an upper bound in practice
  int intervals = 0;
};

using Integrand = std::function<double(double)>;

/// Globally adaptive Gauss-Kronrod (7/15) on [a, b]: the interval with the
/// largest |K15 - G7| is bisected until the summed estimate drops below `tol`.
/// Throws ConvergenceError when `max_intervals` is exhausted.
QuadResult adaptive_quad(const Integrand& f, double a, double b, double tol,
                         int max_intervals = 4000);

/// Integral over [a, inf).  `envelope(x)` must bound |f| on [x, inf) and be
/// nonincreasing; the range is cut where it falls below tol / 10.
QuadResult integrate_to_infinity(const Integrand& f, double a, const Integrand& envelope,
                                 double tol, int max_intervals = 4000);

/// First x >= a (found by doubling the step) with envelope(x) < level.
double envelope_cutoff(const Integrand& envelope, double a, double level);

}  // namespace mfzero
