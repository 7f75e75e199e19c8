#pragma once

#include <cstdint>
#include <vector>

namespace byzfit {

enum class PivotRule {
  Bland,         // least-index entering; guarantees termination
  DantzigBland,  // most-negative entering with index tie-break
};

struct SimplexOptions {
  PivotRule rule = PivotRule::Bland;
  double eps = 1e-9;
  uint64_t max_pivots = 2'000'000;
};

struct SimplexResult {
  enum class Status { Optimal, Infeasible, Unbounded, PivotLimit } status;
  double objective = 0.0;
  std::vector<double> x;
  uint64_t pivots = 0;
  // Most-violated original row when phase 1 certifies infeasibility.
  int infeasible_row = -1;
};

// Dense dictionary (tableau) two-phase simplex for
//     maximize c.x  subject to  A x <= b,  x >= 0.
// Layout favors many rows and few columns; every rule is index-based, so
// identical inputs pivot identically.
SimplexResult simplex_solve(const std::vector<std::vector<double>>& A,
                            const std::vector<double>& b,
                            const std::vector<double>& c,
                            const SimplexOptions& opts = {});

}  // namespace byzfit
