#pragma once

#include <cstddef>
#include <vector>

#include "topstat/extended_real.hpp"

namespace topstat {

/// Coefficient field for homology computations. Only characteristic 2 is
/// supported by the matrix reduction engine; characteristic 0 appears in the
/// closed-form barcode evaluators, where field dependence enters through
/// torsion (real projective spaces).
struct FieldSpec {
  int characteristic = 2;

  static FieldSpec f2() { return FieldSpec{2}; }
  static FieldSpec rational() { return FieldSpec{0}; }
  void validate() const;
  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

/// A persistence interval in one homology dimension.
///
/// Endpoints live on the extended real line; flags record whether each
/// endpoint is included. The default convention is [birth, death) for finite
/// deaths and [birth, +inf] for essential classes. Openness flags affect
/// containment queries only; interval length and the symmetric-difference
/// cost are measure-theoretic and ignore them.
class PersistenceInterval {
 public:
  PersistenceInterval(int dim, ExtendedReal birth, ExtendedReal death);
  PersistenceInterval(int dim, ExtendedReal birth, ExtendedReal death,
                      bool birth_closed, bool death_closed);

  int dim() const { return dim_; }
  ExtendedReal birth() const { return birth_; }
  ExtendedReal death() const { return death_; }
  bool birth_closed() const { return birth_closed_; }
  bool death_closed() const { return death_closed_; }

  ExtendedReal length() const;
  bool contains(ExtendedReal r) const;

  friend bool operator==(const PersistenceInterval&,
                         const PersistenceInterval&) = default;
  /// Canonical order: (dim, birth, death, flags).
  friend bool operator<(const PersistenceInterval& a,
                        const PersistenceInterval& b);

 private:
  int dim_;
  ExtendedReal birth_, death_;
  bool birth_closed_, death_closed_;
};

ExtendedReal interval_length(const PersistenceInterval& j);

/// Measure of the symmetric difference of two same-dimension intervals,
/// the per-pair cost of the barcode matching distance. Disjoint intervals
/// cost the sum of their lengths; nested or overlapping ones the leftover.
ExtendedReal symmetric_difference(const PersistenceInterval& a,
                                  const PersistenceInterval& b);

/// A finite multiset of persistence intervals across dimensions, kept in
/// canonical (dim, birth, death) order with zero-length intervals pruned.
class Barcode {
 public:
  Barcode() = default;
  explicit Barcode(std::vector<PersistenceInterval> intervals);

  const std::vector<PersistenceInterval>& intervals() const { return intervals_; }
  std::size_t size() const { return intervals_.size(); }
  bool empty() const { return intervals_.empty(); }

  std::vector<int> dimensions() const;
  std::vector<PersistenceInterval> in_dimension(int dim) const;
  /// Number of dim-k intervals containing r; equals the k-th Betti number
  /// of the filtration at r.
  std::size_t count_containing(int dim, ExtendedReal r) const;

  /// Union of both multisets.
  static Barcode merged(const Barcode& a, const Barcode& b);

  friend bool operator==(const Barcode&, const Barcode&) = default;

 private:
  std::vector<PersistenceInterval> intervals_;
};

/// Sampled graph of a Betti-0 function x -> beta0(x): the least filtration
/// radius at which the superlevel mass reaches x. Monotone nondecreasing in x.
struct BettiZeroCurve {
  std::vector<double> xs;      // strictly increasing, in (0, 1]
  std::vector<double> values;  // nondecreasing, nonnegative

  void validate() const;
};

}  // namespace topstat
