#include "topstat/persistence.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "topstat/analytic_barcodes.hpp"
#include "topstat/complex.hpp"
#include "topstat/distributions.hpp"
#include "topstat/geometry.hpp"
#include "topstat/mesh.hpp"
#include "topstat/rng.hpp"
#include "vendor/doctest.h"

using namespace topstat;

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
const ExtendedReal kInf = ExtendedReal::infinity();

// Rank over F2 of a dense 0/1 matrix, by Gaussian elimination.
int f2_rank(std::vector<std::vector<char>> m) {
  int rank = 0;
  std::size_t rows = m.size();
  if (rows == 0) return 0;
  std::size_t cols = m[0].size();
  for (std::size_t c = 0; c < cols; ++c) {
    std::size_t pivot = rows;
    for (std::size_t r = rank; r < rows; ++r)
      if (m[r][c]) {
        pivot = r;
        break;
      }
    if (pivot == rows) continue;
    std::swap(m[rank], m[pivot]);
    for (std::size_t r = 0; r < rows; ++r)
      if (static_cast<int>(r) != rank && m[r][c])
        for (std::size_t k = 0; k < cols; ++k) m[r][k] ^= m[rank][k];
    ++rank;
    if (rank == static_cast<int>(rows)) break;
  }
  return rank;
}

// Betti numbers of the sublevel subcomplex {value <= r}, computed directly
// from boundary ranks. An independent oracle for the column reduction.
std::vector<int> brute_force_betti(const FilteredComplex& fc, double r,
                                   int top_dim) {
  std::vector<const Simplex*> live;
  for (const Simplex& s : fc.simplices())
    if (s.value <= r) live.push_back(&s);
  auto index_of = [&](const std::vector<int>& vertices) {
    for (std::size_t i = 0; i < live.size(); ++i)
      if (live[i]->vertices == vertices) return static_cast<int>(i);
    return -1;
  };
  std::vector<int> count(top_dim + 2, 0);
  for (const Simplex* s : live)
    if (s->dim() <= top_dim + 1) ++count[s->dim()];

  // rank of the boundary map from dimension k to k-1
  auto boundary_rank = [&](int k) {
    if (k == 0) return 0;
    std::vector<std::vector<char>> m;
    for (const Simplex* s : live) {
      if (s->dim() != k) continue;
      std::vector<char> col(live.size(), 0);
      for (std::size_t drop = 0; drop < s->vertices.size(); ++drop) {
        std::vector<int> face = s->vertices;
        face.erase(face.begin() + drop);
        int idx = index_of(face);
        REQUIRE(idx >= 0);
        col[idx] = 1;
      }
      m.push_back(col);
    }
    return f2_rank(m);
  };

  std::vector<int> betti(top_dim + 1, 0);
  for (int k = 0; k <= top_dim; ++k)
    betti[k] = count[k] - boundary_rank(k) - boundary_rank(k + 1);
  return betti;
}

}  // namespace

TEST_CASE("boundary matrix lists facet rows in filtration order") {
  FilteredComplex fc({{0.0, {0}}, {0.0, {1}}, {0.25, {0, 1}}});
  BoundaryMatrix bm(fc);
  REQUIRE(bm.column_count() == 3);
  CHECK(bm.column(0).empty());
  CHECK(bm.column(2) == std::vector<int>{0, 1});
  CHECK(bm.dim_of(2) == 1);
  CHECK(bm.value_of(2) == 0.25);
  CHECK(bm.max_dim() == 1);
}

TEST_CASE("matrix reduction supports characteristic 2 only") {
  FilteredComplex fc(std::vector<Simplex>{{0.0, {0}}});
  CHECK_NOTHROW(persistence_barcode(fc, FieldSpec::f2()));
  CHECK_THROWS_AS(persistence_barcode(fc, FieldSpec::rational()),
                  std::invalid_argument);
}

TEST_CASE("a single vertex yields one essential component") {
  FilteredComplex fc(std::vector<Simplex>{{0.0, {0}}});
  Barcode bc = persistence_barcode(fc, FieldSpec::f2());
  REQUIRE(bc.size() == 1);
  CHECK(bc.intervals()[0] == PersistenceInterval(0, 0.0, kInf));
}

TEST_CASE("three points merging into a filled triangle") {
  PointCloud cloud = PointCloud::circle_from_positions({0.0, 0.25, 0.5});
  Barcode bc =
      persistence_barcode(rips_filtration(cloud, 2), FieldSpec::f2());
  // The cycle closes and is filled at the same value, so no dim-1 interval
  // survives pruning.
  CHECK(bc.in_dimension(1).empty());
  auto comp = bc.in_dimension(0);
  REQUIRE(comp.size() == 3);
  CHECK(comp[0] == PersistenceInterval(0, 0.0, 0.25));
  CHECK(comp[1] == PersistenceInterval(0, 0.0, 0.25));
  CHECK(comp[2] == PersistenceInterval(0, 0.0, kInf));
}

TEST_CASE("the square configuration has a persistent cycle") {
  PointCloud cloud =
      PointCloud::circle_from_positions({0.0, 0.25, 0.5, 0.75});
  Barcode bc =
      persistence_barcode(rips_filtration(cloud, 2), FieldSpec::f2());
  auto comp = bc.in_dimension(0);
  REQUIRE(comp.size() == 4);
  for (int i = 0; i < 3; ++i)
    CHECK(comp[i] == PersistenceInterval(0, 0.0, 0.25));
  CHECK(comp[3] == PersistenceInterval(0, 0.0, kInf));

  auto cycles = bc.in_dimension(1);
  REQUIRE(cycles.size() == 1);
  CHECK(cycles[0] == PersistenceInterval(1, 0.25, 0.5));

  // Truncating at dim_max = 2 leaves the 2-skeleton of the tetrahedron once
  // every triangle is present, which is a 2-sphere; the resulting essential
  // dim-2 class is a known artifact of skeleton truncation, not of the data.
  auto voids = bc.in_dimension(2);
  REQUIRE(voids.size() == 1);
  CHECK(voids[0] == PersistenceInterval(2, 0.5, kInf));
}

TEST_CASE("betti counts from the reduction match brute-force ranks") {
  Rng rng(909);
  for (int trial = 0; trial < 12; ++trial) {
    std::size_t n = 5 + trial % 3;
    std::vector<double> positions;
    for (std::size_t i = 0; i < n; ++i) positions.push_back(rng.uniform());
    PointCloud cloud = PointCloud::circle_from_positions(positions);
    FilteredComplex fc = rips_filtration(cloud, 2);
    Barcode bc = persistence_barcode(fc, FieldSpec::f2());
    for (double r : {0.05, 0.15, 0.25, 0.4, 0.51}) {
      std::vector<int> oracle = brute_force_betti(fc, r, 2);
      for (int k = 0; k <= 2; ++k)
        CHECK(bc.count_containing(k, r) ==
              static_cast<std::size_t>(oracle[k]));
    }
  }
}

TEST_CASE("reduction is deterministic") {
  PointCloud cloud = PointCloud::circle_from_positions(
      {0.03, 0.21, 0.39, 0.58, 0.7, 0.95});
  FilteredComplex fc = rips_filtration(cloud, 2);
  CHECK(persistence_barcode(fc, FieldSpec::f2()) ==
        persistence_barcode(fc, FieldSpec::f2()));
}

TEST_CASE("icosphere meshes have the right combinatorics") {
  for (int level : {0, 2}) {
    SphereMesh mesh = icosphere_mesh(level);
    int f = 20, e = 30, v = 12;
    for (int i = 0; i < level; ++i) {
      f *= 4;
      e *= 4;
    }
    v = e - f + 2;  // Euler characteristic of the sphere
    CHECK(mesh.triangles.size() == static_cast<std::size_t>(f));
    CHECK(mesh.edges.size() == static_cast<std::size_t>(e));
    CHECK(mesh.vertices.size() == static_cast<std::size_t>(v));
    for (const auto& p : mesh.vertices)
      CHECK(p.norm() == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK_THROWS_AS(icosphere_mesh(-1), std::invalid_argument);
}

TEST_CASE("discretized densities report their cell variation") {
  DiscretizedDensity d = discretize_circle([](double u) { return 2.0 + u; }, 10);
  CHECK(d.vertex_count() == 10);
  CHECK_NOTHROW(d.validate());
  // Linear ramp except for the wrap-around edge, whose variation dominates.
  CHECK(d.max_cell_variation() == doctest::Approx(0.9).epsilon(1e-12));
}

TEST_CASE("sublevel persistence of a two-well circle density") {
  auto f = [](double u) { return 2.0 + std::cos(4.0 * kPi * u); };
  DiscretizedDensity density = discretize_circle(f, 2000);
  DensityPersistence result = sublevel_persistence(density, FieldSpec::f2());
  CHECK(result.mesh_modulus > 0.0);
  CHECK(result.mesh_modulus < 0.01);

  auto comp = result.barcode.in_dimension(0);
  REQUIRE(comp.size() == 2);
  // Both wells bottom out at f = 1; the two components merge at the lower
  // saddle value 3, where the surviving sublevel set also closes the cycle.
  CHECK(comp[0].birth().value() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(comp[0].death().value() == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(comp[1].birth().value() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(comp[1].death() == kInf);

  auto cycles = result.barcode.in_dimension(1);
  REQUIRE(cycles.size() == 1);
  CHECK(cycles[0].birth().value() == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(cycles[0].death() == kInf);
}

TEST_CASE("superlevel persistence drops components and matches closed form") {
  VonMises vm{0.0, 1.0};
  DistributionSpec spec = vm;
  DiscretizedDensity mesh_density = discretize_circle(
      [&](double u) { return topstat::density(spec, &u); }, 2000);
  DensityPersistence result =
      superlevel_cech_persistence(mesh_density, FieldSpec::f2());
  CHECK(result.barcode.in_dimension(0).empty());

  auto cycles = result.barcode.in_dimension(1);
  REQUIRE(cycles.size() == 1);
  CHECK(cycles[0].death() == kInf);
  Barcode analytic = cech_barcode(spec);
  auto expected = analytic.in_dimension(1);
  REQUIRE(expected.size() == 1);
  CHECK(std::abs(cycles[0].birth().value() - expected[0].birth().value()) <=
        result.mesh_modulus);
}

TEST_CASE("superlevel persistence requires a positive density") {
  DiscretizedDensity density =
      discretize_circle([](double u) { return u; }, 16);  // hits zero at u=0
  CHECK_THROWS_AS(superlevel_cech_persistence(density, FieldSpec::f2()),
                  std::domain_error);
}
