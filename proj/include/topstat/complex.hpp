#pragma once

#include <iosfwd>
#include <vector>

#include "topstat/extended_real.hpp"
#include "topstat/geometry.hpp"

namespace topstat {

/// One simplex of a filtered complex: sorted vertex ids plus the filtration
/// value at which it enters.
struct Simplex {
  double value = 0.0;
  std::vector<int> vertices;

  int dim() const { return static_cast<int>(vertices.size()) - 1; }

  friend bool operator==(const Simplex&, const Simplex&) = default;
};

/// A finite filtered simplicial complex, stored in the global filtration
/// order (value, dim, lexicographic vertices). That order is what makes the
/// downstream matrix reduction deterministic.
class FilteredComplex {
 public:
  FilteredComplex() = default;
  explicit FilteredComplex(std::vector<Simplex> simplices);

  const std::vector<Simplex>& simplices() const { return simplices_; }
  std::size_t size() const { return simplices_.size(); }
  int max_dim() const;

  /// Checks closure under faces and monotonicity of values along faces.
  void validate() const;

  /// One simplex per line: "value dim v0 v1 ... vk".
  void dump(std::ostream& os) const;

 private:
  std::vector<Simplex> simplices_;
};

/// Vietoris-Rips filtration: a simplex enters at the maximum pairwise
/// distance of its vertices. With an infinite radius cap the full
/// (dim_max)-skeleton on n points is generated, so the cap is required
/// for n > 64.
FilteredComplex rips_filtration(const PointCloud& cloud, int dim_max,
                                ExtendedReal r_max = ExtendedReal::infinity());

/// Cech filtration: a simplex enters at the radius of the smallest ball
/// (in the embedding) enclosing its vertices. Requires an embeddable cloud
/// (circle or sphere).
FilteredComplex cech_filtration(const PointCloud& cloud, int dim_max,
                                ExtendedReal r_max = ExtendedReal::infinity());

}  // namespace topstat
