#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "byzfit/dataset.hpp"
#include "byzfit/multipoly.hpp"
#include "byzfit/outcome.hpp"
#include "byzfit/report.hpp"
#include "byzfit/wb_common.hpp"

namespace byzfit {

// Multivariate decoding problem: N points with pairwise-distinct coordinates
// along `axis`, a total-degree bound d for the target polynomial, and a
// bound t on the number of corrupted values. Requires
// N >= t + C(d+t+m, m) and an exact field.
struct MVProblem {
  std::vector<std::vector<Scalar>> xs;  // N x m coordinates
  std::vector<Scalar> zs;               // N values
  int vars = 2;
  int degree = 1;
  int t = 0;
  int axis = 0;  // the distinct-coordinate axis carrying the error locator

  void validate() const;
};

struct MVResult {
  MultiPoly poly;           // m vars, total degree <= d
  MultiPoly error_locator;  // univariate in axis, monic, degree exactly t
  MultiPoly q;              // poly * error_locator
  std::vector<size_t> flagged;
};

// N = t + C(d+t+m, m): points needed for q and monic e to be determined.
uint64_t required_sample_size(int d, int m, int t);

// Shared decoding engine (works for any m >= 1): solves the linear system
// z_i * e(x_i,axis) = q(x_i) for the coefficients of q (all monomials of
// total degree <= d+t) and of monic e (t free coefficients), divides, and
// checks Hamming distance <= t. Each failure branch is distinguished:
// Infeasible (no solution), NotDivisible (e does not divide q),
// TooManyErrors (agreement check fails).
Outcome<MVResult> decode_with_locator(const std::vector<std::vector<Scalar>>& xs,
                                      const std::vector<Scalar>& zs, int vars,
                                      int degree, int t, int axis);

Outcome<MVResult> mv_wb_decode(const MVProblem& prob);

// Noise-enumeration wrapper around mv_wb_decode: tries noise vectors over a
// leading subset in lexicographic alphabet order and returns the first
// polynomial that stays within delta of the held-out data for the required
// fraction. Same contract as the univariate wrapper.
Outcome<FitReport> mv_noise_enumerate_fit(const DataSet& S, double rho_clean,
                                          int d, const NoiseAlphabet& alphabet,
                                          const EnumerateOptions& opts = {});

namespace detail {
// Dimension-independent enumeration engine shared with the univariate module.
Outcome<FitReport> enumerate_noise(const DataSet& S, double rho_clean, int d,
                                   const NoiseAlphabet& alphabet,
                                   const EnumerateOptions& opts, int axis);
}  // namespace detail

}  // namespace byzfit
