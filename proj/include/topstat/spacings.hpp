#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "topstat/geometry.hpp"
#include "topstat/interval.hpp"

namespace topstat {

/// Circular gaps of a point set on the circle: positions are re-anchored at
/// the first point, sorted, and differenced, so the n gaps sum to one.
struct SpacingSet {
  std::size_t n = 0;
  std::vector<double> gaps;    // in traversal order from the anchor
  std::vector<double> sorted;  // the same multiset, nondecreasing

  /// All gaps positive and summing to one within 1e-12.
  void validate() const;
};

/// Gaps of a circle cloud with n >= 2 points, anchored at point 0. The gap
/// arithmetic (wrap, sort, subtract) matches the distance arithmetic of the
/// circle metric bit for bit, so downstream comparisons against filtration
/// values can be exact.
SpacingSet spacings(const PointCloud& cloud);

/// Expected i-th smallest gap of n uniform points:
/// (1/n) * sum_{j=n+1-i}^{n} 1/j. Exact 128-bit rational evaluation for
/// n <= 60, compensated floating sum above.
double expected_spacing(std::size_t n, std::size_t i);

/// P(largest gap > x), the alternating binomial tail sum. Exact integer
/// binomials for n <= 60, log-domain terms with compensated accumulation
/// above.
double whitworth_tail(std::size_t n, double x);

/// Expected component barcode of n uniform circle points: one interval
/// [0, E S_{n:i}) per nonmaximal gap plus the essential class [0, inf].
Barcode expected_betti0_barcode(std::size_t n);

/// Expected cycle barcode: the single interval [E S_{n:n}, inf].
Barcode expected_betti1_barcode(std::size_t n);

/// n-sample expected Betti-0 function: c_n * E S_{n:ceil((n-1)x)} with
/// c_n = (n-1)/(1 - E S_{n:n}), normalized so the curve integrates to one.
/// Converges pointwise to -ln(1-x) on (0,1) as n grows.
double empirical_betti0_function(std::size_t n, double x);

/// One seeded experiment comparing the filtration of n uniform circle points
/// against the exact gap theory.
struct UniformCircleReport {
  std::size_t n = 0;
  std::uint64_t seed = 0;
  /// Component deaths of the radius filtration equal the n-1 smallest gaps
  /// by exact float comparison.
  bool deaths_match_gaps = false;
  /// Largest gap <= 1/3, so the cycle assertions below apply.
  bool cycle_tested = false;
  /// Exactly one cycle interval, born at the largest gap (exact float
  /// comparison), dying inside [1/3, 1/2].
  bool cycle_ok = false;
  double largest_gap = 0.0;

  bool passed() const { return deaths_match_gaps && (!cycle_tested || cycle_ok); }
};

UniformCircleReport uniform_circle_persistence_check(std::size_t n,
                                                     std::uint64_t seed);

}  // namespace topstat
