#pragma once

#include <vector>

namespace topstat {

/// Minimum-cost perfect assignment on a square cost matrix.
struct AssignmentResult {
  std::vector<int> row_to_col;
  double cost = 0.0;
};

/// Kuhn-Munkres with row/column potentials, O(n^3). Costs must be finite.
AssignmentResult solve_assignment(const std::vector<std::vector<double>>& cost);

}  // namespace topstat
