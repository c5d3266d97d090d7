#include "topstat/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "topstat/analytic_barcodes.hpp"
#include "topstat/barcode_metric.hpp"
#include "topstat/distributions.hpp"
#include "topstat/quadrature.hpp"
#include "topstat/rng.hpp"
#include "topstat/special.hpp"

namespace topstat {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// Above this the Bessel series gets slow; switch to the large-argument
// expansion of the ratio. The two branches agree to ~1e-11 at the seam,
// far below the local slope, so monotonicity survives the switch.
constexpr double kRatioAsymptoticCut = 4000.0;

// 1 - A_p(kappa) from the second-order large-argument expansions of
// I_{p/2} and I_{p/2-1}:
//   A_p(k) = 1 - (p-1)/(2k) + c2/k^2 + O(1/k^3).
double one_minus_a_large(int p, double kappa) {
  const double pp = static_cast<double>(p);
  const double q = pp - 2.0;
  const double a2 = (pp * pp - 1.0) * (pp * pp - 9.0) / 128.0;
  const double b1 = (q * q - 1.0) / 8.0;
  const double b2 = (q * q - 1.0) * (q * q - 9.0) / 128.0;
  const double c2 = a2 - b2 - b1 * (pp - 1.0) / 2.0;
  return (pp - 1.0) / (2.0 * kappa) - c2 / (kappa * kappa);
}

void check_p(int p) {
  if (p < 2) throw std::invalid_argument("dimension p must be at least 2");
}

// Rows of unit vectors in R^p; circle clouds are embedded as angles.
Eigen::MatrixXd unit_vector_matrix(const PointCloud& cloud) {
  if (cloud.size() == 0) throw std::invalid_argument("empty point cloud");
  const auto n = static_cast<Eigen::Index>(cloud.size());
  if (cloud.space() == Space::circle) {
    Eigen::MatrixXd x(n, 2);
    for (Eigen::Index i = 0; i < n; ++i) {
      double theta = cloud.circle_angle(static_cast<std::size_t>(i));
      x(i, 0) = std::cos(theta);
      x(i, 1) = std::sin(theta);
    }
    return x;
  }
  if (cloud.space() == Space::sphere) {
    const int p = cloud.ambient_dim();
    Eigen::MatrixXd x(n, p);
    for (Eigen::Index i = 0; i < n; ++i)
      x.row(i) = cloud.sphere_point(static_cast<std::size_t>(i));
    return x;
  }
  throw std::invalid_argument(
      "maximum likelihood fits expect points on a circle or sphere");
}

double watson_moment(int p, double kappa, int cosine_power) {
  if (kappa < 200.0) {
    auto weight = [&](double theta) {
      double c = std::cos(theta);
      double base = std::exp(kappa * (c * c - 1.0)) *
                    std::pow(std::sin(theta), double(p - 2));
      for (int k = 0; k < cosine_power; ++k) base *= c;
      return base;
    };
    return integrate(weight, 0.0, kPi, 1e-13);
  }
  // At high concentration the integrand is a boundary layer of width
  // 1/sqrt(kappa) at the poles, which adaptive panels resolve slowly. The
  // substitution v^2 = kappa (1 - t^2) with t = cos(theta) turns it into a
  // fixed Gaussian profile: the moment becomes
  //   2 kappa^{-(p-1)/2} Int_0^{sqrt(kappa)} t^{k-1} v^{p-2} e^{-v^2} dv.
  // Truncating at v^2 = 60 discards a factor e^{-60} of the mass and keeps
  // t^{k-1} bounded, so one cheap quadrature serves every concentration.
  double v_max = std::sqrt(60.0);
  auto weight = [&](double v) {
    double t_sq = 1.0 - v * v / kappa;
    return std::pow(t_sq, 0.5 * (cosine_power - 1)) *
           std::pow(v, double(p - 2)) * std::exp(-v * v);
  };
  return 2.0 * std::pow(kappa, -0.5 * (p - 1)) *
         integrate(weight, 0.0, v_max, 1e-13);
}

void check_n_values(const std::vector<std::size_t>& n_values) {
  if (n_values.size() < 2)
    throw std::invalid_argument("need at least two sample sizes");
  for (std::size_t i = 0; i < n_values.size(); ++i) {
    if (n_values[i] < 1)
      throw std::invalid_argument("sample sizes must be positive");
    if (i > 0 && n_values[i] <= n_values[i - 1])
      throw std::invalid_argument("sample sizes must be strictly increasing");
  }
}

double series_mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double series_se(const std::vector<double>& v, double mean) {
  if (v.size() < 2) return 0.0;
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  auto m = static_cast<double>(v.size());
  return std::sqrt(ss / (m * (m - 1.0)));
}

// Fill mean/se/slope for a series whose raw rows are already populated.
void summarize_series(Series& s, const std::vector<std::size_t>& n_values) {
  s.mean.resize(s.raw.size());
  s.se.resize(s.raw.size());
  std::vector<double> log_n, log_mean;
  for (std::size_t i = 0; i < s.raw.size(); ++i) {
    if (s.raw[i].empty()) {
      s.mean[i] = std::numeric_limits<double>::quiet_NaN();
      s.se[i] = 0.0;
      continue;
    }
    s.mean[i] = series_mean(s.raw[i]);
    s.se[i] = series_se(s.raw[i], s.mean[i]);
    if (s.mean[i] > 0.0) {
      log_n.push_back(std::log10(static_cast<double>(n_values[i])));
      log_mean.push_back(std::log10(s.mean[i]));
    }
  }
  if (log_n.size() >= 2) {
    LineFit fit = fit_line(log_n.data(), log_mean.data(),
                           static_cast<int>(log_n.size()));
    s.slope = fit.slope;
    s.intercept = fit.intercept;
  }
}

}  // namespace

double a_p(int p, double kappa) {
  check_p(p);
  if (!(kappa >= 0.0) || !std::isfinite(kappa))
    throw std::invalid_argument("concentration must be finite and >= 0");
  if (kappa == 0.0) return 0.0;
  if (kappa > kRatioAsymptoticCut) return 1.0 - one_minus_a_large(p, kappa);
  double nu = 0.5 * p - 1.0;
  return std::exp(log_bessel_i(nu + 1.0, kappa) - log_bessel_i(nu, kappa));
}

double a_p_prime(int p, double kappa) {
  check_p(p);
  if (!(kappa >= 0.0) || !std::isfinite(kappa))
    throw std::invalid_argument("concentration must be finite and >= 0");
  if (kappa == 0.0) return 1.0 / p;
  if (kappa > kRatioAsymptoticCut) {
    // Written through 1 - A to avoid cancellation when A is close to 1.
    double m = one_minus_a_large(p, kappa);
    double a = 1.0 - m;
    return m * (1.0 + a) - (p - 1.0) * a / kappa;
  }
  double a = a_p(p, kappa);
  return 1.0 - a * a - (p - 1.0) * a / kappa;
}

double invert_a_p(int p, double rho) {
  check_p(p);
  if (!std::isfinite(rho) || rho < 0.0)
    throw std::invalid_argument("mean resultant length must lie in [0, 1)");
  if (rho >= 1.0)
    throw std::overflow_error(
        "mean resultant length at or beyond 1; concentration overflows");
  if (rho == 0.0) return 0.0;

  // Standard closed-form starting point, then a bracket by doubling. The
  // large-argument branch of a_p makes the doubling cheap even when rho is
  // within machine precision of 1.
  double r2 = rho * rho;
  double guess = rho * (p - r2) / (1.0 - r2);
  double lo = 0.0;
  double hi = std::max(2.0 * guess, 1.0);
  while (a_p(p, hi) < rho) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e300) throw std::runtime_error("resultant inversion diverged");
  }

  double kappa = std::clamp(guess, lo + 0.25 * (hi - lo), hi);
  for (int iter = 0; iter < 200; ++iter) {
    double f = a_p(p, kappa) - rho;
    if (std::fabs(f) <= 1e-12) break;
    if (f < 0.0)
      lo = kappa;
    else
      hi = kappa;
    if (hi - lo <= 1e-15 * std::max(1.0, kappa)) break;
    double d = a_p_prime(p, kappa);
    double next = kappa - f / d;
    if (!(next > lo) || !(next < hi)) next = 0.5 * (lo + hi);
    kappa = next;
  }
  return kappa;
}

VmfEstimate mle_vmf(const PointCloud& cloud) {
  Eigen::MatrixXd x = unit_vector_matrix(cloud);
  const int p = static_cast<int>(x.cols());

  VmfEstimate est;
  est.p = p;
  Eigen::VectorXd mean = x.colwise().mean();
  double r = mean.norm();
  est.resultant_length = r;

  if (r == 0.0) {
    est.mu_hat = Eigen::VectorXd::Unit(p, 0);
    est.kappa_hat = 0.0;
    est.degenerate = true;
    return est;
  }
  est.mu_hat = mean / r;
  if (r > 1.0 - 1e-12) {
    est.kappa_hat = std::numeric_limits<double>::infinity();
    est.degenerate = true;
    return est;
  }
  est.kappa_hat = invert_a_p(p, r);
  est.asymptotic_variance = 1.0 / a_p_prime(p, est.kappa_hat);
  return est;
}

WatsonEstimate mle_watson(const PointCloud& cloud) {
  Eigen::MatrixXd x = unit_vector_matrix(cloud);
  const int p = static_cast<int>(x.cols());
  const auto n = static_cast<double>(x.rows());
  if (x.rows() < p)
    throw std::invalid_argument(
        "Watson fit needs at least p observations for a full-rank scatter");

  Eigen::MatrixXd scatter = x.transpose() * x / n;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(scatter);
  if (eig.info() != Eigen::Success)
    throw std::runtime_error("scatter eigendecomposition failed");

  // Eigenvalues come in increasing order.
  double top = eig.eigenvalues()(p - 1);
  double gap = top - eig.eigenvalues()(p - 2);
  if (gap < 1e-10)
    throw std::runtime_error(
        "leading scatter eigenvalue is not isolated; axis is ill-defined");
  if (top <= 1.0 / p)
    throw std::runtime_error(
        "scatter concentration at or below the uniform value 1/p; "
        "no bipolar fit exists");

  WatsonEstimate est;
  est.p = p;
  est.mu_hat = eig.eigenvectors().col(p - 1);
  est.scatter_eigenvalue = top;

  // E_kappa[t^2] grows from 1/p to 1; bracket the target by doubling.
  double lo = 0.0;
  double hi = 1.0;
  while (watson_mean_square(p, hi) < top) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e9)
      throw std::runtime_error("concentration solve diverged; scatter is "
                               "numerically degenerate");
  }
  double kappa = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    double f = watson_mean_square(p, kappa) - top;
    if (std::fabs(f) <= 1e-12) break;
    if (f < 0.0)
      lo = kappa;
    else
      hi = kappa;
    if (hi - lo <= 1e-12 * std::max(1.0, kappa)) break;
    double d = watson_square_variance(p, kappa);
    double next = kappa - f / d;
    if (!(next > lo) || !(next < hi)) next = 0.5 * (lo + hi);
    kappa = next;
  }
  est.kappa_hat = kappa;
  est.asymptotic_variance = 1.0 / watson_square_variance(p, kappa);
  return est;
}

double watson_mean_square(int p, double kappa) {
  check_p(p);
  if (!(kappa >= 0.0) || !std::isfinite(kappa))
    throw std::invalid_argument("concentration must be finite and >= 0");
  return watson_moment(p, kappa, 2) / watson_moment(p, kappa, 0);
}

double watson_square_variance(int p, double kappa) {
  check_p(p);
  if (!(kappa >= 0.0) || !std::isfinite(kappa))
    throw std::invalid_argument("concentration must be finite and >= 0");
  double z = watson_moment(p, kappa, 0);
  double m2 = watson_moment(p, kappa, 2) / z;
  double m4 = watson_moment(p, kappa, 4) / z;
  return m4 - m2 * m2;
}

Barcode estimated_vmf_barcode(int p, double kappa_hat, BarcodeFamily which) {
  check_p(p);
  if (!std::isfinite(kappa_hat) || kappa_hat < 0.0)
    throw std::invalid_argument("fitted concentration must be finite and >= 0");
  DistributionSpec spec =
      VonMisesFisher{p, Eigen::VectorXd::Unit(p, 0), kappa_hat};
  switch (which) {
    case BarcodeFamily::morse_component:
      return Barcode(morse_barcode(spec, FieldSpec::f2()).in_dimension(0));
    case BarcodeFamily::morse_top:
      return Barcode(morse_barcode(spec, FieldSpec::f2()).in_dimension(p - 1));
    case BarcodeFamily::cech_top:
      return Barcode(cech_barcode(spec).in_dimension(p - 1));
  }
  throw std::invalid_argument("unknown barcode family");
}

ConvergenceReport convergence_experiment(
    int p, double kappa, const std::vector<std::size_t>& n_values, int trials,
    std::uint64_t seed) {
  check_p(p);
  if (!(kappa > 0.0) || !std::isfinite(kappa))
    throw std::invalid_argument("concentration must be finite and > 0");
  if (trials < 1) throw std::invalid_argument("trials must be positive");
  check_n_values(n_values);

  ConvergenceReport report;
  report.p = p;
  report.kappa = kappa;
  report.n_values = n_values;
  report.trials = trials;
  report.seed = seed;

  const BarcodeFamily families[] = {BarcodeFamily::morse_component,
                                    BarcodeFamily::morse_top,
                                    BarcodeFamily::cech_top};
  const char* names[] = {"morse_component", "morse_top", "cech_top",
                         "kappa_sq_error"};
  Barcode truth[] = {estimated_vmf_barcode(p, kappa, families[0]),
                     estimated_vmf_barcode(p, kappa, families[1]),
                     estimated_vmf_barcode(p, kappa, families[2])};

  report.series.resize(4);
  for (int s = 0; s < 4; ++s) {
    report.series[s].name = names[s];
    report.series[s].raw.resize(n_values.size());
  }

  DistributionSpec spec =
      VonMisesFisher{p, Eigen::VectorXd::Unit(p, 0), kappa};
  Rng root(seed);
  for (std::size_t si = 0; si < n_values.size(); ++si) {
    for (int t = 0; t < trials; ++t) {
      std::uint64_t child =
          root.split(si * static_cast<std::size_t>(trials) + t).seed();
      PointCloud cloud = sample(spec, n_values[si], child);
      VmfEstimate est = mle_vmf(cloud);
      if (est.degenerate) {
        ++report.degenerate_trials;
        continue;
      }
      for (int s = 0; s < 3; ++s) {
        Barcode fitted = estimated_vmf_barcode(p, est.kappa_hat, families[s]);
        ExtendedReal d = barcode_distance(fitted, truth[s]).cost;
        report.series[s].raw[si].push_back(d.value());
      }
      double err = est.kappa_hat - kappa;
      report.series[3].raw[si].push_back(err * err);
    }
  }
  for (auto& s : report.series) summarize_series(s, n_values);
  return report;
}

ConvergenceReport betti0_sup_error_experiment(
    double kappa, const std::vector<std::size_t>& n_values, int trials,
    std::uint64_t seed) {
  if (!(kappa > 0.0) || !std::isfinite(kappa))
    throw std::invalid_argument("concentration must be finite and > 0");
  if (trials < 1) throw std::invalid_argument("trials must be positive");
  check_n_values(n_values);

  constexpr int kGrid = 1024;
  std::vector<double> xs(kGrid), truth(kGrid);
  for (int j = 0; j < kGrid; ++j) {
    xs[j] = (j + 0.5) / kGrid;
    truth[j] = vmf_sphere_betti0_closed_form(kappa, xs[j]);
  }

  ConvergenceReport report;
  report.p = 3;
  report.kappa = kappa;
  report.n_values = n_values;
  report.trials = trials;
  report.seed = seed;
  report.series.resize(2);
  report.series[0].name = "betti0_sup_error";
  report.series[1].name = "kappa_sq_error";
  for (auto& s : report.series) s.raw.resize(n_values.size());

  DistributionSpec spec = VonMisesFisher{3, Eigen::VectorXd::Unit(3, 0), kappa};
  Rng root(seed);
  for (std::size_t si = 0; si < n_values.size(); ++si) {
    for (int t = 0; t < trials; ++t) {
      std::uint64_t child =
          root.split(si * static_cast<std::size_t>(trials) + t).seed();
      PointCloud cloud = sample(spec, n_values[si], child);
      VmfEstimate est = mle_vmf(cloud);
      if (est.degenerate) {
        ++report.degenerate_trials;
        continue;
      }
      double sup = 0.0;
      for (int j = 0; j < kGrid; ++j) {
        double fitted = vmf_sphere_betti0_closed_form(est.kappa_hat, xs[j]);
        sup = std::max(sup, std::fabs(fitted - truth[j]));
      }
      report.series[0].raw[si].push_back(sup);
      double err = est.kappa_hat - kappa;
      report.series[1].raw[si].push_back(err * err);
    }
  }
  for (auto& s : report.series) summarize_series(s, n_values);
  return report;
}

}  // namespace topstat
