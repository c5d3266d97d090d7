#pragma once

#include "topstat/complex.hpp"
#include "topstat/interval.hpp"
#include "topstat/mesh.hpp"

namespace topstat {

/// Boundary matrix of a filtered complex over F2, columns in the global
/// filtration order, each column the sorted row indices of the simplex's
/// facets.
class BoundaryMatrix {
 public:
  explicit BoundaryMatrix(const FilteredComplex& complex);

  std::size_t column_count() const { return columns_.size(); }
  const std::vector<int>& column(std::size_t j) const { return columns_[j]; }
  int dim_of(std::size_t j) const { return dims_[j]; }
  double value_of(std::size_t j) const { return values_[j]; }
  int max_dim() const { return max_dim_; }

 private:
  std::vector<std::vector<int>> columns_;
  std::vector<double> values_;
  std::vector<int> dims_;
  int max_dim_ = -1;
};

/// Standard persistence column reduction with the clearing optimization
/// (columns are processed by descending dimension; a column whose row index
/// becomes a pivot is known to reduce to zero and is skipped). Deterministic
/// given the filtration order. Only characteristic 2 is supported.
Barcode reduce(const BoundaryMatrix& matrix, FieldSpec field);

Barcode persistence_barcode(const FilteredComplex& complex, FieldSpec field);

/// Barcode of a vertex-sampled density plus the mesh modulus that bounds
/// the discretization error of its endpoints.
struct DensityPersistence {
  Barcode barcode;
  double mesh_modulus = 0.0;
};

/// Persistent homology of the sublevel filtration {f <= r}: every cell
/// enters at the maximum density over its vertices (lower-star rule).
DensityPersistence sublevel_persistence(const DiscretizedDensity& density,
                                        FieldSpec field);

/// Persistent homology of the superlevel filtration {f >= 1/r},
/// parametrized by r = 1/s so it is again a sublevel filtration of the
/// vertex weight 1/f. Requires a strictly positive density. Components
/// (dimension 0) are not part of the contract and are dropped; the Betti-0
/// information of this filtration is carried by the Betti-0 function
/// machinery instead. The reported modulus is the cell variation of 1/f,
/// i.e. in the same units as the returned endpoints.
DensityPersistence superlevel_cech_persistence(const DiscretizedDensity& density,
                                               FieldSpec field);

}  // namespace topstat
