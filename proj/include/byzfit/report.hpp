#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "byzfit/chebyshev.hpp"
#include "byzfit/dataset.hpp"
#include "byzfit/multipoly.hpp"

namespace byzfit {

// Outcome of a reconstruction. Exactly one of poly/cheb is set on success.
// flagged holds original dataset indices classified corrupt (beyond the
// noise band of the recovered model); residual stats are always computed on
// the unfiltered input.
struct FitReport {
  std::optional<MultiPoly> poly;
  std::optional<ChebModel> cheb;
  std::optional<MultiPoly> locator;  // WB-family error locator e
  std::optional<MultiPoly> q;        // WB-family product q = poly * e

  std::vector<size_t> flagged;
  std::vector<Scalar> noise_vector;  // accepted enumeration offsets
  int fitted_degree = -1;

  double delta_achieved = 0.0;
  double residual_max = 0.0;
  double residual_mean = 0.0;
  std::optional<double> sup_vs_truth;

  uint64_t wb_calls = 0;
  uint64_t lp_rows = 0;
  uint64_t pivots = 0;
  int64_t filtered_size = -1;
  double elapsed_ms = 0.0;

  nlohmann::json config;  // exact config echo
  std::string notes;      // e.g. grid-size deviations from the paper scale
};

// |y - model(x)| as a double; PrimeField differences use the symmetric lift.
double residual_abs(const Scalar& y, const Scalar& model_value);

// Fills residual_max/residual_mean of `rep` from an exact polynomial model
// evaluated over the whole dataset.
void fill_poly_residuals(FitReport& rep, const DataSet& ds);

}  // namespace byzfit
