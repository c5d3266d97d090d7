#include "topstat/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace topstat {

namespace {

// 15-point Kronrod nodes on [-1, 1] (positive half) with Kronrod weights,
// embedding the 7-point Gauss rule at the odd nodes.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct PanelEstimate {
  double kronrod;
  double err;
};

PanelEstimate gk15(const std::function<double(double)>& f, double a, double b) {
  double c = 0.5 * (a + b);
  double h = 0.5 * (b - a);
  double fc = f(c);
  double result_k = kWgk[7] * fc;
  double result_g = kWg[3] * fc;
  for (int i = 0; i < 7; ++i) {
    double x = h * kXgk[i];
    double fsum = f(c - x) + f(c + x);
    result_k += kWgk[i] * fsum;
    if (i % 2 == 1) result_g += kWg[i / 2] * fsum;
  }
  result_k *= h;
  result_g *= h;
  return {result_k, std::fabs(result_k - result_g)};
}

double adapt_gk(const std::function<double(double)>& f, double a, double b,
                double tol, int depth) {
  PanelEstimate e = gk15(f, a, b);
  if (e.err <= tol || b - a < 1e-300) return e.kronrod;
  if (depth > 60)
    throw std::runtime_error("integrate: failed to converge (depth > 60)");
  double m = 0.5 * (a + b);
  return adapt_gk(f, a, m, 0.5 * tol, depth + 1) +
         adapt_gk(f, m, b, 0.5 * tol, depth + 1);
}

double adapt_simpson(const std::function<double(double)>& f, double a,
                     double b, double fa, double fm, double fb, double whole,
                     double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  double delta = left + right - whole;
  if (depth > 60)
    throw std::runtime_error("integrate_simpson: failed to converge");
  if (std::fabs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adapt_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
         adapt_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol, double abs_tol) {
  if (a == b) return 0.0;
  if (!(a < b)) return -integrate(f, b, a, rel_tol, abs_tol);
  PanelEstimate rough = gk15(f, a, b);
  double tol = std::max(abs_tol, rel_tol * std::fabs(rough.kronrod));
  if (tol == 0.0) tol = 1e-300;
  if (rough.err <= tol) return rough.kronrod;
  double m = 0.5 * (a + b);
  return adapt_gk(f, a, m, 0.5 * tol, 1) + adapt_gk(f, m, b, 0.5 * tol, 1);
}

double integrate_simpson(const std::function<double(double)>& f, double a,
                         double b, double tol) {
  if (a == b) return 0.0;
  if (!(a < b)) return -integrate_simpson(f, b, a, tol);
  double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  double scaled = std::max(tol, tol * std::fabs(whole));
  return adapt_simpson(f, a, b, fa, fm, fb, whole, scaled, 0);
}

}  // namespace topstat
