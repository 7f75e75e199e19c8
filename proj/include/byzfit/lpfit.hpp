#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "byzfit/chebyshev.hpp"
#include "byzfit/dataset.hpp"
#include "byzfit/outcome.hpp"
#include "byzfit/report.hpp"
#include "byzfit/simplex.hpp"

namespace byzfit {

enum class RowKind { SampleBand, CoeffBox, GridBound };

// One linear constraint  sum_v coeff[v]*c_v + coeff[ncoef]*delta <= rhs.
struct LPRow {
  RowKind kind;
  std::vector<double> coeff;  // ncoef coefficient entries plus the delta entry
  double rhs = 0.0;
  int sample_index = -1;  // SampleBand rows reference their sample
};

// minimize delta subject to typed rows; variables are the tensor Chebyshev
// coefficients (GradedLex-free: row-major over per-axis indices) plus delta.
struct LPInstance {
  std::vector<int> degrees;  // per-axis caps (inclusive, 0-indexed basis)
  int grid_per_axis = 0;
  std::vector<LPRow> rows;

  int ncoef() const;
  size_t count_rows(RowKind kind) const;
};

// Tensor-grid constraint assembly for arbitrary dimension; rows are emitted
// as all SampleBand pairs, then CoeffBox pairs, then GridBound pairs.
LPInstance build_lp_tensor(const DataSet& S, const std::vector<int>& degrees,
                           int grid_per_axis);
// The bivariate surface: per-axis caps n (x) and m (y).
LPInstance build_lp(const DataSet& S, int n, int m, int grid_per_axis);

// Per-axis grid count for the equality-spaced bound grid I: the prescription
// is d^5 points, capped for desk-scale runs; every deviation is reported.
int default_grid_per_axis(int total_degree);

struct LPSolveStats {
  uint64_t pivots = 0;
  uint64_t rows = 0;
};

// Solves the instance with the in-repo simplex (fixed pivot rule, so the
// solution is deterministic down to the bits). Infeasibility is reported
// with the violating-constraint certificate in the failure detail.
Outcome<ChebModel> solve_lp(const LPInstance& inst, LPSolveStats* stats = nullptr,
                            const SimplexOptions& opts = {});

// ceil(C * (d^2/delta) * ln(d/delta)) with a floor of (d+1)^2 samples.
uint64_t sample_size(int d, double delta, double C = 1.0);

struct FilterConfig {
  int d = 4;
  double delta = 0.05;
  double rho_clean = 0.8;
  // Square half-width for the local window; defaults to delta/d^3.
  std::optional<double> square_halfwidth;
  // Stop once the kept set exceeds this; defaults to ceil(d^2/delta).
  std::optional<size_t> target_count;
  enum class Center { Mean, Median } center_rule = Center::Median;

  void validate() const;
  double halfwidth() const;
  size_t target() const;
};

// Square-interval Byzantine elimination: walks seed points in dataset order,
// computes the window center by the configured rule, and keeps points whose
// value is within 2*delta of it, until the kept set exceeds the target.
// Output rows keep their original indices (DataSet::origin).
Outcome<DataSet> byzantine_filter(const DataSet& S, const FilterConfig& cfg);

// byzantine_filter followed by the LP fit on the survivors. When a reference
// polynomial is supplied, the report carries the sup-norm distance to it on
// a 101x101 audit grid.
Outcome<FitReport> fit_robust(const DataSet& S, const FilterConfig& cfg, int n,
                              int m, int grid_per_axis,
                              const MultiPoly* reference = nullptr);

struct AxisMap {
  double scale = 1.0;
  double offset = 0.0;
  bool degenerate = false;
  double operator()(double v) const { return scale * v + offset; }
  double invert(double v) const { return (v - offset) / scale; }
};

struct RescaleResult {
  DataSet data;
  std::vector<AxisMap> maps;  // k coordinate maps plus the value map
  bool any_degenerate = false;
};

// Affine per-axis maps onto [-1,1] (coordinates and values). Axes already
// inside [-1,1] keep identity maps, making the operation idempotent;
// zero-range axes map to the constant 0 and set the warning flag.
RescaleResult rescale(const DataSet& S);

struct DerivativeAudit {
  double sup_p = 0.0;
  std::vector<double> sup_grad;  // per-axis sup |dp/dx_a|
  double ratio = 0.0;            // max_a sup|dp/dx_a| / ((sum degrees)^2 * sup|p|)
};

// Bernstein-Markov property probe on a dense endpoint-inclusive grid.
DerivativeAudit derivative_bound_audit(const ChebModel& model,
                                       int grid_per_axis = 101);

// sup |p| over an endpoint-inclusive tensor grid.
double sup_on_grid(const ChebModel& model, int per_axis);

// sup |p - q| over an endpoint-inclusive tensor grid (q in monomial basis).
double sup_distance_on_grid(const ChebModel& model, const MultiPoly& reference,
                            int per_axis);

}  // namespace byzfit
