#include "topstat/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

namespace topstat {

SphereMesh icosphere_mesh(int level) {
  if (level < 0 || level > 7)
    throw std::invalid_argument("icosphere level must be in [0, 7]");

  // Regular icosahedron from the three golden rectangles.
  const double phi = 0.5 * (1.0 + std::sqrt(5.0));
  std::vector<Eigen::Vector3d> verts = {
      {-1, phi, 0}, {1, phi, 0},   {-1, -phi, 0}, {1, -phi, 0},
      {0, -1, phi}, {0, 1, phi},   {0, -1, -phi}, {0, 1, -phi},
      {phi, 0, -1}, {phi, 0, 1},   {-phi, 0, -1}, {-phi, 0, 1}};
  for (auto& v : verts) v.normalize();
  std::vector<std::array<int, 3>> faces = {
      {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
      {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
      {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
      {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};

  for (int l = 0; l < level; ++l) {
    std::map<std::pair<int, int>, int> midpoint;
    auto mid = [&](int a, int b) {
      auto key = std::minmax(a, b);
      auto it = midpoint.find(key);
      if (it != midpoint.end()) return it->second;
      Eigen::Vector3d m = (verts[a] + verts[b]).normalized();
      verts.push_back(m);
      int id = static_cast<int>(verts.size()) - 1;
      midpoint.emplace(key, id);
      return id;
    };
    std::vector<std::array<int, 3>> next;
    next.reserve(faces.size() * 4);
    for (const auto& f : faces) {
      int a = mid(f[0], f[1]), b = mid(f[1], f[2]), c = mid(f[2], f[0]);
      next.push_back({f[0], a, c});
      next.push_back({f[1], b, a});
      next.push_back({f[2], c, b});
      next.push_back({a, b, c});
    }
    faces = std::move(next);
  }

  std::set<std::array<int, 2>> edge_set;
  for (const auto& f : faces) {
    for (int k = 0; k < 3; ++k) {
      int a = f[k], b = f[(k + 1) % 3];
      edge_set.insert({std::min(a, b), std::max(a, b)});
    }
  }

  SphereMesh mesh;
  mesh.vertices = std::move(verts);
  mesh.edges.assign(edge_set.begin(), edge_set.end());
  for (auto f : faces) {
    std::sort(f.begin(), f.end());
    mesh.triangles.push_back(f);
  }
  return mesh;
}

void DiscretizedDensity::validate() const {
  int n = static_cast<int>(values.size());
  if (n == 0) throw std::invalid_argument("density with no vertices");
  for (const auto& e : edges)
    if (e[0] < 0 || e[1] < 0 || e[0] >= n || e[1] >= n || e[0] == e[1])
      throw std::invalid_argument("bad edge in density mesh");
  for (const auto& t : triangles)
    if (t[0] < 0 || t[2] >= n || !(t[0] < t[1] && t[1] < t[2]))
      throw std::invalid_argument("bad triangle in density mesh");
}

double DiscretizedDensity::max_cell_variation() const {
  double m = 0.0;
  for (const auto& e : edges)
    m = std::max(m, std::fabs(values[e[0]] - values[e[1]]));
  for (const auto& t : triangles) {
    double lo = std::min({values[t[0]], values[t[1]], values[t[2]]});
    double hi = std::max({values[t[0]], values[t[1]], values[t[2]]});
    m = std::max(m, hi - lo);
  }
  return m;
}

DiscretizedDensity discretize_circle(const std::function<double(double)>& f,
                                     int m) {
  if (m < 3) throw std::invalid_argument("circle mesh needs at least 3 vertices");
  DiscretizedDensity d;
  d.values.resize(m);
  for (int k = 0; k < m; ++k) d.values[k] = f(static_cast<double>(k) / m);
  d.edges.reserve(m);
  for (int k = 0; k + 1 < m; ++k) d.edges.push_back({k, k + 1});
  d.edges.push_back({0, m - 1});
  d.validate();
  return d;
}

DiscretizedDensity discretize_sphere(
    const std::function<double(const Eigen::Vector3d&)>& f, int level) {
  SphereMesh mesh = icosphere_mesh(level);
  DiscretizedDensity d;
  d.values.reserve(mesh.vertices.size());
  for (const auto& v : mesh.vertices) d.values.push_back(f(v));
  d.edges = std::move(mesh.edges);
  d.triangles = std::move(mesh.triangles);
  d.validate();
  return d;
}

}  // namespace topstat
