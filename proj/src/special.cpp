#include "topstat/special.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace topstat {

double bessel_i(double nu, double x) {
  if (x < 0.0 || nu < 0.0) throw std::invalid_argument("bessel_i: need nu, x >= 0");
  if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
  double half = 0.5 * x;
  // t_0 = (x/2)^nu / Gamma(nu + 1), then t_{m+1} = t_m (x/2)^2 / ((m+1)(m+1+nu))
  double term = std::exp(nu * std::log(half) - std::lgamma(nu + 1.0));
  double sum = term;
  double q = half * half;
  for (int m = 0; m < 100000; ++m) {
    term *= q / ((m + 1.0) * (m + 1.0 + nu));
    sum += term;
    if (term <= 1e-16 * sum) return sum;
  }
  throw std::runtime_error("bessel_i: series did not converge");
}

double log_bessel_i(double nu, double x) {
  if (x < 0.0 || nu < 0.0)
    throw std::invalid_argument("log_bessel_i: need nu, x >= 0");
  if (x == 0.0) {
    if (nu == 0.0) return 0.0;
    return -std::numeric_limits<double>::infinity();
  }
  double lh = std::log(0.5 * x);
  // log t_m = (2m + nu) log(x/2) - lgamma(m+1) - lgamma(m+nu+1); terms rise
  // to a single peak near m* = (sqrt(nu^2 + x^2) - nu)/2 then fall.
  std::vector<double> logs;
  double peak = -std::numeric_limits<double>::infinity();
  for (int m = 0; m < 1000000; ++m) {
    double lt = (2.0 * m + nu) * lh - std::lgamma(m + 1.0) -
                std::lgamma(m + nu + 1.0);
    logs.push_back(lt);
    if (lt > peak) peak = lt;
    if (lt < peak - 60.0 && m > 0 && lt < logs[logs.size() - 2]) break;
  }
  double acc = 0.0;
  for (double lt : logs) acc += std::exp(lt - peak);
  return peak + std::log(acc);
}

double log_sphere_surface(int p) {
  if (p < 1) throw std::invalid_argument("sphere_surface: need p >= 1");
  const double log_pi = 1.1447298858494001741434273513531;
  return std::log(2.0) + 0.5 * p * log_pi - std::lgamma(0.5 * p);
}

double sphere_surface(int p) { return std::exp(log_sphere_surface(p)); }

LineFit fit_line(const double* x, const double* y, int n) {
  if (n < 2) throw std::invalid_argument("fit_line: need at least 2 points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw std::invalid_argument("fit_line: degenerate x values");
  double slope = (n * sxy - sx * sy) / denom;
  return {slope, (sy - slope * sx) / n};
}

}  // namespace topstat
