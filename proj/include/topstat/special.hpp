#pragma once

namespace topstat {

/// Modified Bessel function of the first kind, I_nu(x), nu >= 0, x >= 0.
/// Power series with term-ratio termination; accurate to ~1e-15 relative
/// for x up to a few hundred (beyond that use log_bessel_i).
double bessel_i(double nu, double x);

/// log I_nu(x), evaluated by log-sum-exp over the series terms so it stays
/// finite well past the overflow point of I_nu itself (x up to ~1e4).
double log_bessel_i(double nu, double x);

/// Surface measure of the unit sphere S^{p-1} in R^p and its logarithm.
double sphere_surface(int p);
double log_sphere_surface(int p);

/// Ordinary least squares slope/intercept of y against x.
struct LineFit {
  double slope;
  double intercept;
};
LineFit fit_line(const double* x, const double* y, int n);

}  // namespace topstat
