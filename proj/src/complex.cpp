#include "topstat/complex.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <map>
#include <ostream>
#include <stdexcept>

namespace topstat {

namespace {

bool filtration_order(const Simplex& a, const Simplex& b) {
  if (a.value != b.value) return a.value < b.value;
  if (a.vertices.size() != b.vertices.size())
    return a.vertices.size() < b.vertices.size();
  return a.vertices < b.vertices;
}

}  // namespace

FilteredComplex::FilteredComplex(std::vector<Simplex> simplices)
    : simplices_(std::move(simplices)) {
  for (auto& s : simplices_) {
    if (s.vertices.empty())
      throw std::invalid_argument("simplex with no vertices");
    if (!std::is_sorted(s.vertices.begin(), s.vertices.end()) ||
        std::adjacent_find(s.vertices.begin(), s.vertices.end()) !=
            s.vertices.end())
      throw std::invalid_argument("simplex vertices must be sorted and unique");
  }
  std::sort(simplices_.begin(), simplices_.end(), filtration_order);
}

int FilteredComplex::max_dim() const {
  int d = -1;
  for (const auto& s : simplices_) d = std::max(d, s.dim());
  return d;
}

void FilteredComplex::validate() const {
  std::map<std::vector<int>, double> value_of;
  for (const auto& s : simplices_) {
    if (!value_of.emplace(s.vertices, s.value).second)
      throw std::invalid_argument("duplicate simplex in complex");
  }
  for (const auto& s : simplices_) {
    if (s.dim() == 0) continue;
    for (std::size_t drop = 0; drop < s.vertices.size(); ++drop) {
      std::vector<int> face;
      face.reserve(s.vertices.size() - 1);
      for (std::size_t i = 0; i < s.vertices.size(); ++i)
        if (i != drop) face.push_back(s.vertices[i]);
      auto it = value_of.find(face);
      if (it == value_of.end())
        throw std::invalid_argument("complex is not closed under faces");
      if (it->second > s.value)
        throw std::invalid_argument("face enters after its coface");
    }
  }
}

void FilteredComplex::dump(std::ostream& os) const {
  char buf[32];
  for (const auto& s : simplices_) {
    std::snprintf(buf, sizeof buf, "%.17g", s.value);
    os << buf << " " << s.dim();
    for (int v : s.vertices) os << " " << v;
    os << "\n";
  }
}

namespace {

struct ExpansionContext {
  const PointCloud* cloud = nullptr;
  const std::vector<Eigen::VectorXd>* embedded = nullptr;  // Cech only
  double r_max = 0.0;
  int dim_max = 0;
  std::vector<std::vector<int>> upper_nbrs;  // sorted neighbor ids w > v
  std::vector<Simplex> out;
};

/// Smallest enclosing ball value of a vertex set, floored by the parent's
/// value. The floor only covers the chain the expansion grew through; the
/// remaining facets are enforced by a monotonicity pass after expansion.
double cech_value(const ExpansionContext& ctx, const std::vector<int>& verts,
                  double parent_value) {
  std::vector<Eigen::VectorXd> pts;
  pts.reserve(verts.size());
  for (int v : verts) pts.push_back((*ctx.embedded)[v]);
  return std::max(parent_value, smallest_enclosing_ball_radius(pts));
}

/// Enclosing-ball radii are monotone under inclusion on paper, but the
/// computed radius of a simplex can land a few ulps below a facet computed
/// from a different support set. Walk the simplices in dimension order and
/// raise every value to the maximum over its facets; drop a simplex whose
/// facet was pruned by the radius cap (the inversion can also straddle the
/// cap). Values never decrease, so the cap stays respected.
void enforce_facet_monotonicity(std::vector<Simplex>& simplices) {
  std::stable_sort(simplices.begin(), simplices.end(),
                   [](const Simplex& a, const Simplex& b) {
                     return a.vertices.size() < b.vertices.size();
                   });
  std::map<std::vector<int>, double> value_of;
  std::vector<Simplex> kept;
  kept.reserve(simplices.size());
  std::vector<int> face;
  for (Simplex& s : simplices) {
    bool closed = true;
    for (std::size_t drop = 0; closed && drop < s.vertices.size(); ++drop) {
      if (s.dim() == 0) break;
      face.clear();
      for (std::size_t i = 0; i < s.vertices.size(); ++i)
        if (i != drop) face.push_back(s.vertices[i]);
      auto it = value_of.find(face);
      if (it == value_of.end())
        closed = false;
      else
        s.value = std::max(s.value, it->second);
    }
    if (!closed) continue;
    value_of.emplace(s.vertices, s.value);
    kept.push_back(std::move(s));
  }
  simplices = std::move(kept);
}

void expand(ExpansionContext& ctx, std::vector<int>& simplex,
            const std::vector<int>& candidates, double value, bool cech) {
  for (std::size_t ci = 0; ci < candidates.size(); ++ci) {
    int u = candidates[ci];
    simplex.push_back(u);
    std::sort(simplex.begin(), simplex.end());

    double v;
    if (cech) {
      v = cech_value(ctx, simplex, value);
    } else {
      v = value;
      for (int w : simplex)
        if (w != u) v = std::max(v, ctx.cloud->distance(u, w));
    }

    if (v <= ctx.r_max) {
      ctx.out.push_back({v, simplex});
      if (static_cast<int>(simplex.size()) - 1 < ctx.dim_max) {
        // Remaining candidates are > u and adjacent to all earlier vertices;
        // restricting to u's upper neighbors keeps exactly the vertices that
        // extend the new simplex.
        std::vector<int> next;
        std::set_intersection(candidates.begin() + ci + 1, candidates.end(),
                              ctx.upper_nbrs[u].begin(),
                              ctx.upper_nbrs[u].end(),
                              std::back_inserter(next));
        expand(ctx, simplex, next, v, cech);
      }
    }
    simplex.erase(std::find(simplex.begin(), simplex.end(), u));
  }
}

FilteredComplex build_filtration(const PointCloud& cloud, int dim_max,
                                 ExtendedReal r_max, bool cech) {
  if (dim_max < 0) throw std::invalid_argument("dim_max must be >= 0");
  if (cloud.size() == 0) throw std::invalid_argument("empty point cloud");
  if (!r_max.is_finite() && cloud.size() > 64)
    throw std::invalid_argument(
        "a finite radius cap is required for more than 64 points");
  if (r_max < ExtendedReal(0.0))
    throw std::invalid_argument("radius cap must be nonnegative");

  int n = static_cast<int>(cloud.size());
  ExpansionContext ctx;
  ctx.cloud = &cloud;
  ctx.r_max = r_max.is_finite() ? r_max.value()
                                : std::numeric_limits<double>::infinity();
  ctx.dim_max = dim_max;

  std::vector<Eigen::VectorXd> embedded;
  if (cech) {
    embedded = cloud.embedded_points();
    ctx.embedded = &embedded;
  }

  // Vertices enter at value 0. Edge values: pairwise distance for Rips,
  // radius of the two-point ball in the embedding for Cech (half the chord,
  // not half the intrinsic distance, so balls stay consistent with faces).
  ctx.upper_nbrs.assign(n, {});
  for (int v = 0; v < n; ++v) ctx.out.push_back({0.0, {v}});
  if (dim_max >= 1) {
    for (int j = 1; j < n; ++j)
      for (int i = 0; i < j; ++i) {
        double value = cech
                           ? 0.5 * ((*ctx.embedded)[i] - (*ctx.embedded)[j]).norm()
                           : cloud.distance(i, j);
        if (value <= ctx.r_max) {
          ctx.out.push_back({value, {i, j}});
          ctx.upper_nbrs[i].push_back(j);
        }
      }
  }
  for (auto& nb : ctx.upper_nbrs) std::sort(nb.begin(), nb.end());

  // Incremental expansion: grow each edge by common higher-id neighbors.
  if (dim_max >= 2) {
    std::size_t edge_count = ctx.out.size();
    for (std::size_t e = 0; e < edge_count; ++e) {
      if (ctx.out[e].dim() != 1) continue;
      Simplex edge = ctx.out[e];
      int i = edge.vertices[0], j = edge.vertices[1];
      std::vector<int> cands;
      std::set_intersection(ctx.upper_nbrs[i].begin(), ctx.upper_nbrs[i].end(),
                            ctx.upper_nbrs[j].begin(), ctx.upper_nbrs[j].end(),
                            std::back_inserter(cands));
      std::vector<int> verts = edge.vertices;
      expand(ctx, verts, cands, edge.value, cech);
    }
  }

  // Rips values are exact maxima over pairs, so faces are monotone by
  // construction; ball radii need the explicit pass.
  if (cech && dim_max >= 2) enforce_facet_monotonicity(ctx.out);

  return FilteredComplex(std::move(ctx.out));
}

}  // namespace

FilteredComplex rips_filtration(const PointCloud& cloud, int dim_max,
                                ExtendedReal r_max) {
  return build_filtration(cloud, dim_max, r_max, /*cech=*/false);
}

FilteredComplex cech_filtration(const PointCloud& cloud, int dim_max,
                                ExtendedReal r_max) {
  return build_filtration(cloud, dim_max, r_max, /*cech=*/true);
}

}  // namespace topstat
