#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "byzfit/dataset.hpp"
#include "byzfit/multipoly.hpp"
#include "byzfit/outcome.hpp"
#include "byzfit/report.hpp"
#include "byzfit/wb_common.hpp"

namespace byzfit {

// Univariate Welch-Berlekamp instance. rho bookkeeping note: the fraction
// parameters throughout this module are *clean* fractions (rho_clean); the
// tolerated corruption count is always t = ceil((1-rho_clean) * N).
struct WBProblem {
  std::vector<std::pair<Scalar, Scalar>> points;  // (x, y), distinct x
  int degree_bound = 0;  // d
  int error_bound = 0;   // t; requires N >= 2t + d + 1

  void validate() const;
};

struct WBResult {
  MultiPoly poly;           // univariate (vars = 1), degree <= d
  MultiPoly error_locator;  // monic, degree exactly t
  std::vector<size_t> corrected_indices;  // points where poly(x_i) != y_i
};

// Solves q(x_i) = y_i e(x_i) exactly and returns p = q/e agreeing with all
// but at most t points. Errors: Infeasible, NotDivisible, TooManyErrors.
Outcome<WBResult> wb_decode(const WBProblem& prob);

// Algorithm-1 style wrapper: adds each candidate noise vector (alphabet^|S'|
// in lexicographic order) to the leading subset S', decodes, and accepts the
// first polynomial within delta of the held-out points for the required
// clean fraction. Reports the accepted noise vector and decoder call count.
Outcome<FitReport> noise_enumerate_fit(const DataSet& S, double rho_clean,
                                       int d, const NoiseAlphabet& alphabet,
                                       const EnumerateOptions& opts = {});

// Smallest degree in [0, d_max] for which noise_enumerate_fit succeeds,
// located by binary search plus a linear descent check (feasibility is
// assumed monotone in d; the descent guards the minimality claim).
Outcome<FitReport> degree_search(const DataSet& S, double rho_clean,
                                 const NoiseAlphabet& alphabet, int d_max,
                                 const EnumerateOptions& opts = {});

}  // namespace byzfit
