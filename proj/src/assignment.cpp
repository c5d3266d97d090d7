#include "topstat/assignment.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace topstat {

// Potentials formulation of the Hungarian algorithm. Internally 1-indexed
// with a virtual root at index 0, which keeps the augmenting-path scan free
// of special cases.
AssignmentResult solve_assignment(const std::vector<std::vector<double>>& a) {
  int n = static_cast<int>(a.size());
  if (n == 0) return {{}, 0.0};
  for (const auto& row : a) {
    if (static_cast<int>(row.size()) != n)
      throw std::invalid_argument("assignment: cost matrix must be square");
    for (double c : row)
      if (!std::isfinite(c))
        throw std::invalid_argument("assignment: costs must be finite");
  }

  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);

  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      int i0 = p[j0], j1 = 0;
      double delta = inf;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        double cur = a[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }

  AssignmentResult res;
  res.row_to_col.assign(n, -1);
  for (int j = 1; j <= n; ++j)
    if (p[j] > 0) res.row_to_col[p[j] - 1] = j - 1;
  for (int i = 0; i < n; ++i) res.cost += a[i][res.row_to_col[i]];
  return res;
}

}  // namespace topstat
