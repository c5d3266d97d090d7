#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "topstat/geometry.hpp"
#include "topstat/interval.hpp"

namespace topstat {

// --- mean resultant machinery ------------------------------------------------

/// Mean resultant length of a von Mises-Fisher law on S^{p-1} with
/// concentration kappa:
///   A_p(kappa) = I_{p/2}(kappa) / I_{p/2 - 1}(kappa).
/// Strictly increasing from 0 toward 1 on [0, inf). Evaluated through the
/// log-Bessel series for moderate kappa and a second-order large-argument
/// expansion beyond it, so the function stays cheap and monotone over the
/// whole half-line.
double a_p(int p, double kappa);

/// Derivative A_p'(kappa) = 1 - A_p^2 - (p-1) A_p / kappa, with the limit
/// value 1/p at kappa = 0.
double a_p_prime(int p, double kappa);

/// Solve A_p(kappa) = rho for rho in [0, 1). Safeguarded Newton iteration;
/// the result satisfies |A_p(kappa) - rho| <= 1e-12. rho = 0 maps to 0.
double invert_a_p(int p, double rho);

// --- maximum likelihood fits -------------------------------------------------

struct VmfEstimate {
  int p = 0;
  Eigen::VectorXd mu_hat;
  double kappa_hat = 0.0;
  double resultant_length = 0.0;
  /// Set when the resultant length sits at the boundary of the parameter
  /// space: R = 0 (kappa_hat = 0) or R within 1e-12 of 1 (kappa_hat = inf).
  bool degenerate = false;
  /// Per-observation asymptotic variance of kappa_hat, 1 / A_p'(kappa_hat);
  /// divide by the sample size. Zero for degenerate fits.
  double asymptotic_variance = 0.0;
};

/// Maximum likelihood fit of the von Mises-Fisher family. Accepts a cloud on
/// S^{p-1} or on the circle (circle positions are embedded in R^2 first).
/// mu_hat is the normalized sample mean; kappa_hat solves A_p(kappa) = R.
VmfEstimate mle_vmf(const PointCloud& cloud);

struct WatsonEstimate {
  int p = 0;
  Eigen::VectorXd mu_hat;
  double kappa_hat = 0.0;
  /// Leading eigenvalue of the sample scatter matrix, i.e. the fitted value
  /// of E[(x . mu)^2].
  double scatter_eigenvalue = 0.0;
  /// Per-observation asymptotic variance of kappa_hat,
  /// 1 / Var_kappa[(x . mu)^2]; divide by the sample size.
  double asymptotic_variance = 0.0;
};

/// Maximum likelihood fit of the bipolar Watson family. mu_hat is the
/// leading eigenvector of the sample scatter matrix (1/n) sum x x^T and
/// kappa_hat solves E_kappa[(x . mu)^2] = lambda_max. Throws
/// std::runtime_error when the leading eigenvalue is not isolated
/// (gap < 1e-10) or when lambda_max <= 1/p, where no bipolar fit exists.
WatsonEstimate mle_watson(const PointCloud& cloud);

/// Moments of t = x . mu under a Watson law on S^{p-1} with concentration
/// kappa >= 0: the mean of t^2 and its variance. The mean is strictly
/// increasing in kappa from 1/p toward 1; the variance is its derivative.
double watson_mean_square(int p, double kappa);
double watson_square_variance(int p, double kappa);

// --- plug-in barcodes and convergence experiments ----------------------------

/// Which slice of the fitted density's barcode to compare.
enum class BarcodeFamily {
  morse_component,  // dimension 0 of the sublevel barcode of the density
  morse_top,        // dimension p-1 of the sublevel barcode
  cech_top,         // dimension p-1 of the superlevel offset barcode
};

/// Barcode slice of the von Mises-Fisher density with the given
/// concentration (the mean direction is fixed to e_1; the barcode does not
/// depend on it). kappa_hat must be finite and nonnegative.
Barcode estimated_vmf_barcode(int p, double kappa_hat, BarcodeFamily which);

/// One measured quantity across sample sizes.
struct Series {
  std::string name;
  std::vector<double> mean;              // one entry per sample size
  std::vector<double> se;                // standard error of each mean
  std::vector<std::vector<double>> raw;  // per-trial values, one row per size
  double slope = 0.0;      // OLS slope of log10(mean) against log10(n)
  double intercept = 0.0;
};

struct ConvergenceReport {
  int p = 0;
  double kappa = 0.0;
  std::vector<std::size_t> n_values;
  int trials = 0;
  std::uint64_t seed = 0;
  /// Trials dropped because the fit was degenerate (all points equal at
  /// small n, say). Dropped trials leave shorter raw rows.
  int degenerate_trials = 0;
  std::vector<Series> series;
};

/// Monte Carlo study of plug-in barcode recovery for the von Mises-Fisher
/// family on S^{p-1}. For each sample size and trial: draw n points, fit by
/// maximum likelihood, and record the barcode distance between the fitted
/// and true barcodes for the three slices above, plus the squared error of
/// kappa_hat. Each trial uses an independent stream split from the seed, so
/// the report is reproducible and trials never share draws across sizes.
ConvergenceReport convergence_experiment(int p, double kappa,
                                         const std::vector<std::size_t>& n_values,
                                         int trials, std::uint64_t seed);

/// Monte Carlo study of the plug-in connected-component count function on
/// S^2: sup over a 1024-point grid in (0, 1) of the error of the fitted
/// closed-form curve, plus the squared error of kappa_hat.
ConvergenceReport betti0_sup_error_experiment(double kappa,
                                              const std::vector<std::size_t>& n_values,
                                              int trials, std::uint64_t seed);

}  // namespace topstat
