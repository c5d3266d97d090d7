#pragma once

#include <utility>
#include <vector>

#include "topstat/distributions.hpp"
#include "topstat/interval.hpp"

namespace topstat {

/// Mass of the density superlevel set as a function of the filtration radius:
/// mass(r) = integral of f over {f >= 1/r}, a nondecreasing map from
/// [1/max f, 1/min f] onto [0, 1]. Built once per family spec; evaluation
/// reduces to one-dimensional colatitude quadrature (nested over longitude in
/// the anisotropic case) with head/tail switching so the error scales with
/// the smaller of the covered and uncovered mass.
class SuperlevelMass {
 public:
  explicit SuperlevelMass(const DistributionSpec& spec);

  /// mass(r), clamped to [0, 1].
  double operator()(double r) const;
  /// Least r with mass(r) >= x, for x in (0, 1]; bracketed bisection on
  /// [r_min, r_max] to relative width 1e-12, seeded from the cached table.
  double invert(double x) const;

  double r_min() const { return r_min_; }  // 1 / max density
  double r_max() const { return r_max_; }  // 1 / min density

 private:
  double evaluate(double r) const;

  DistributionSpec spec_;
  double r_min_ = 0.0;
  double r_max_ = 0.0;
  bool degenerate_ = false;  // constant density: mass is a step function
  std::vector<double> grid_r_;
  std::vector<double> grid_mass_;
};

/// Barcode of the sublevel filtration of the density, from the closed-form
/// interval lists of the five families. Interval endpoints are density
/// values. The rotation-group family carries torsion in middle degrees, so
/// its dimension-1 and dimension-2 intervals appear only in characteristic 2.
Barcode morse_barcode(const DistributionSpec& spec, const FieldSpec& field);

/// Barcode of the superlevel (ball-cover) filtration, dimensions k >= 1 only;
/// endpoints are radii. Dimension 0 is deliberately omitted: the Betti-0
/// function below replaces it.
Barcode cech_barcode(const DistributionSpec& spec);

/// Dimension-0 intervals of the superlevel filtration (component structure),
/// kept internal to the library for duality checks against the sublevel
/// barcode; not part of cech_barcode output. Canonical interval order.
std::vector<PersistenceInterval> cech_component_intervals(
    const DistributionSpec& spec);

/// beta0(x) = least r whose superlevel mass reaches x, for x in (0, 1].
/// Closed form on S^2 for the rotationally symmetric unimodal family;
/// all other cases invert SuperlevelMass numerically.
double betti0_value(const DistributionSpec& spec, double x);

/// Sampled curve at xs = i/grid, i = 1..grid.
BettiZeroCurve betti0_curve(const DistributionSpec& spec, int grid);

/// Closed form on S^2 (unimodal family, kappa > 0):
/// (e^{2k} - 1) / (2k [(1-x) e^{2k} + x]).
double vmf_sphere_betti0_closed_form(double kappa, double x);

/// Partial derivative of the S^2 closed form with respect to kappa.
double vmf_sphere_betti0_kappa_derivative(double kappa, double x);

/// Upper bound for |d beta0 / d kappa| on (0, 1]:
/// (e^{4k} + (1 + 2k) e^{2k} + 1) / (2 k^2).
double vmf_sphere_betti0_kappa_derivative_bound(double kappa);

/// Parametric point of the Betti-0 graph for the circular and spherical
/// unimodal families: t in [0, pi] is the colatitude of the superlevel cap
/// boundary; returns (x, r) = (mass of the cap, reciprocal density at its
/// boundary).
std::pair<double, double> betti0_parametric_point(const DistributionSpec& spec,
                                                  double t);

/// Verifies the reciprocal correspondence between bounded sublevel intervals
/// in dimension i and bounded superlevel intervals in dimension p-2-i
/// (component intervals standing in for superlevel dimension 0). Supported
/// for the axial and anisotropic sphere families, where bounded intervals
/// exist. Comparison at relative tolerance 1e-9.
bool duality_check(const DistributionSpec& spec);

}  // namespace topstat
