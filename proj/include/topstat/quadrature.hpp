#pragma once

#include <functional>

namespace topstat {

/// Adaptive Gauss-Kronrod 7-15 quadrature of f over [a, b].
/// Bisects until the embedded error estimate of each panel meets its share
/// of max(abs_tol, rel_tol * |whole integral|). Throws on divergence
/// (depth > 60 with the estimate still out of tolerance).
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-12, double abs_tol = 0.0);

/// Adaptive Simpson with Richardson extrapolation. Kept deliberately
/// independent of the Gauss-Kronrod path so the two can cross-check each
/// other in tests of normalizing constants.
double integrate_simpson(const std::function<double(double)>& f, double a,
                         double b, double tol = 1e-10);

}  // namespace topstat
