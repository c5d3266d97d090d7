#pragma once

#include <array>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace topstat {

/// Triangle mesh of the unit 2-sphere obtained by subdividing the regular
/// icosahedron `level` times and projecting to the sphere. level L gives
/// 10*4^L + 2 vertices, 30*4^L edges and 20*4^L triangles.
struct SphereMesh {
  std::vector<Eigen::Vector3d> vertices;
  std::vector<std::array<int, 2>> edges;
  std::vector<std::array<int, 3>> triangles;
};

SphereMesh icosphere_mesh(int level);

/// A positive density sampled on the vertices of a simplicial mesh
/// (cycle graph for the circle, icosphere for S^2). Cells are the edges
/// and triangles; the "modulus" of the discretization is the largest
/// variation of the vertex values over any single cell, and bounds how far
/// barcode endpoints computed from the mesh can drift from the continuum.
struct DiscretizedDensity {
  std::vector<std::array<int, 2>> edges;
  std::vector<std::array<int, 3>> triangles;
  std::vector<double> values;

  std::size_t vertex_count() const { return values.size(); }
  double max_cell_variation() const;
  void validate() const;
};

/// Sample f on the m-vertex cycle mesh of the circle (circumference 1,
/// vertex k at position k/m).
DiscretizedDensity discretize_circle(const std::function<double(double)>& f,
                                     int m);

/// Sample f on the level-L icosphere.
DiscretizedDensity discretize_sphere(
    const std::function<double(const Eigen::Vector3d&)>& f, int level);

}  // namespace topstat
