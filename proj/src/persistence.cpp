#include "topstat/persistence.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace topstat {

namespace {

struct VertexVectorHash {
  std::size_t operator()(const std::vector<int>& v) const {
    std::size_t h = v.size();
    for (int x : v)
      h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) +
           (h >> 2);
    return h;
  }
};

/// Symmetric difference of two sorted index vectors (F2 column addition).
void add_column(std::vector<int>& target, const std::vector<int>& other,
                std::vector<int>& scratch) {
  scratch.clear();
  std::set_symmetric_difference(target.begin(), target.end(), other.begin(),
                                other.end(), std::back_inserter(scratch));
  target.swap(scratch);
}

}  // namespace

BoundaryMatrix::BoundaryMatrix(const FilteredComplex& complex) {
  const auto& simplices = complex.simplices();
  std::size_t n = simplices.size();
  std::unordered_map<std::vector<int>, int, VertexVectorHash> index;
  index.reserve(2 * n);
  for (std::size_t j = 0; j < n; ++j)
    if (!index.emplace(simplices[j].vertices, static_cast<int>(j)).second)
      throw std::invalid_argument("duplicate simplex in filtered complex");

  columns_.resize(n);
  values_.resize(n);
  dims_.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const Simplex& s = simplices[j];
    values_[j] = s.value;
    dims_[j] = s.dim();
    max_dim_ = std::max(max_dim_, s.dim());
    if (s.dim() == 0) continue;
    std::vector<int>& col = columns_[j];
    col.reserve(s.vertices.size());
    std::vector<int> face(s.vertices.size() - 1);
    for (std::size_t drop = 0; drop < s.vertices.size(); ++drop) {
      for (std::size_t i = 0, k = 0; i < s.vertices.size(); ++i)
        if (i != drop) face[k++] = s.vertices[i];
      auto it = index.find(face);
      if (it == index.end())
        throw std::invalid_argument("complex is not closed under faces");
      if (static_cast<std::size_t>(it->second) > j)
        throw std::invalid_argument("face enters filtration after its coface");
      col.push_back(it->second);
    }
    std::sort(col.begin(), col.end());
  }
}

Barcode reduce(const BoundaryMatrix& matrix, FieldSpec field) {
  field.validate();
  if (field.characteristic != 2)
    throw std::invalid_argument(
        "matrix reduction supports characteristic 2 only");

  std::size_t n = matrix.column_count();
  std::vector<std::vector<int>> R(n);
  for (std::size_t j = 0; j < n; ++j) R[j] = matrix.column(j);

  std::vector<int> pivot_owner(n, -1);
  std::vector<int> partner(n, -1);
  std::vector<char> cleared(n, 0);
  std::vector<int> scratch;

  for (int d = matrix.max_dim(); d >= 1; --d) {
    for (std::size_t j = 0; j < n; ++j) {
      if (matrix.dim_of(j) != d) continue;
      if (cleared[j]) {
        R[j].clear();
        continue;
      }
      auto& col = R[j];
      while (!col.empty()) {
        int owner = pivot_owner[col.back()];
        if (owner < 0) break;
        add_column(col, R[owner], scratch);
      }
      if (!col.empty()) {
        int low = col.back();
        pivot_owner[low] = static_cast<int>(j);
        partner[low] = static_cast<int>(j);
        partner[j] = low;
        cleared[low] = 1;  // its own column is now known to reduce to zero
      }
    }
  }

  std::vector<PersistenceInterval> intervals;
  for (std::size_t i = 0; i < n; ++i) {
    int mate = partner[i];
    if (mate >= 0 && matrix.dim_of(mate) == matrix.dim_of(i) + 1) {
      // i creates a class, mate destroys it. Zero-length bars are pruned
      // by the Barcode constructor.
      intervals.emplace_back(matrix.dim_of(i), matrix.value_of(i),
                             matrix.value_of(mate));
    } else if (mate < 0 && R[i].empty()) {
      intervals.emplace_back(matrix.dim_of(i), matrix.value_of(i),
                             ExtendedReal::infinity());
    }
  }
  return Barcode(std::move(intervals));
}

Barcode persistence_barcode(const FilteredComplex& complex, FieldSpec field) {
  return reduce(BoundaryMatrix(complex), field);
}

namespace {

FilteredComplex lower_star_complex(const DiscretizedDensity& density,
                                   const std::vector<double>& vertex_values) {
  std::vector<Simplex> simplices;
  simplices.reserve(density.values.size() + density.edges.size() +
                    density.triangles.size());
  for (std::size_t v = 0; v < vertex_values.size(); ++v)
    simplices.push_back({vertex_values[v], {static_cast<int>(v)}});
  for (const auto& e : density.edges) {
    double val = std::max(vertex_values[e[0]], vertex_values[e[1]]);
    simplices.push_back({val, {std::min(e[0], e[1]), std::max(e[0], e[1])}});
  }
  for (const auto& t : density.triangles) {
    double val = std::max({vertex_values[t[0]], vertex_values[t[1]],
                           vertex_values[t[2]]});
    simplices.push_back({val, {t[0], t[1], t[2]}});
  }
  return FilteredComplex(std::move(simplices));
}

}  // namespace

DensityPersistence sublevel_persistence(const DiscretizedDensity& density,
                                        FieldSpec field) {
  density.validate();
  FilteredComplex complex = lower_star_complex(density, density.values);
  return {persistence_barcode(complex, field), density.max_cell_variation()};
}

DensityPersistence superlevel_cech_persistence(const DiscretizedDensity& density,
                                               FieldSpec field) {
  density.validate();
  std::vector<double> weights(density.values.size());
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!(density.values[i] > 0.0))
      throw std::domain_error(
          "superlevel filtration requires a strictly positive density");
    weights[i] = 1.0 / density.values[i];
  }
  FilteredComplex complex = lower_star_complex(density, weights);
  Barcode full = persistence_barcode(complex, field);

  std::vector<PersistenceInterval> kept;
  for (const auto& j : full.intervals())
    if (j.dim() >= 1) kept.push_back(j);

  DiscretizedDensity reciprocal = density;
  reciprocal.values = weights;
  return {Barcode(std::move(kept)), reciprocal.max_cell_variation()};
}

}  // namespace topstat
