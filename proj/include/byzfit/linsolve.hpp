#pragma once

#include <vector>

#include "byzfit/outcome.hpp"
#include "byzfit/scalar.hpp"

namespace byzfit {

struct LinearSolution {
  std::vector<Scalar> x;  // one particular solution; free variables set to 0
  int rank = 0;
};

// Solves A x = b exactly over Rational or PrimeField scalars. A may be
// rectangular and rank-deficient; an inconsistent system yields
// Fail::Infeasible. Rational systems are cleared of denominators row-wise
// and eliminated fraction-free (Bareiss) to bound intermediate growth;
// PrimeField systems use plain elimination. Pivoting is first-nonzero, so
// identical inputs produce identical outputs.
Outcome<LinearSolution> solve_linear(const std::vector<std::vector<Scalar>>& A,
                                     const std::vector<Scalar>& b);

}  // namespace byzfit
