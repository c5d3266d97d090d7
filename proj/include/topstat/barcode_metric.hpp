#pragma once

#include <utility>
#include <vector>

#include "topstat/interval.hpp"

namespace topstat {

/// Outcome of the optimal partial matching between two barcodes.
/// Indices refer to positions in each barcode's canonical interval list.
struct BarcodeMatching {
  ExtendedReal cost = 0.0;
  std::vector<std::pair<int, int>> matched;  // (left index, right index)
  std::vector<int> unmatched_left;
  std::vector<int> unmatched_right;
};

/// Quasi-metric between barcodes: per dimension, the minimum over partial
/// matchings of
///   sum of symmetric-difference costs of matched pairs
///   + sum of lengths of unmatched intervals,
/// summed over dimensions. Infinite when essential intervals cannot be
/// matched up (an unmatched infinite interval costs its infinite length).
///
/// Finite intervals are matched by an exact assignment solve; intervals with
/// an infinite endpoint can only be matched within their own endpoint class,
/// where sorting by the finite endpoint is optimal.
BarcodeMatching barcode_distance(const Barcode& a, const Barcode& b);

/// Exhaustive minimum over all partial matchings. Intended as an oracle for
/// small inputs; throws if either barcode has more than 6 intervals in any
/// dimension.
ExtendedReal brute_force_barcode_distance(const Barcode& a, const Barcode& b);

}  // namespace topstat
