#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "byzfit/dataset.hpp"
#include "byzfit/lpfit.hpp"
#include "byzfit/multipoly.hpp"
#include "byzfit/outcome.hpp"
#include "byzfit/report.hpp"

namespace byzfit {

struct BoxRegion {
  std::vector<double> lo, hi;
  bool contains(std::span<const double> pt) const;
  static BoxRegion hull(const BoxRegion& a, const BoxRegion& b);
};

// Axis-aligned cells tiling a domain box, plus the per-row cell assignment.
// Cells are half-open along each axis except at the domain's upper face.
struct Partition {
  std::vector<BoxRegion> cells;
  std::vector<int> assignment;

  static Partition uniform_grid(const BoxRegion& domain,
                                const std::vector<int>& cells_per_axis,
                                const DataSet& data);
  // Near-balanced per-axis split with a total cell count.
  static std::vector<int> split_counts(int k, int total_cells);
};

// Per-cell (and per-merge-node) fitter choice.
struct CellFitter {
  enum class Kind { WB, LP } kind = Kind::LP;
  // WB: exact interpolation/decoding in global coordinates.
  int wb_degree = 1;
  int wb_t = 0;
  // LP: Chebyshev fit in cell-local coordinates.
  int lp_degree_x = 2;
  int lp_degree_y = 2;
  int lp_grid = 16;
};

// A model attached to a region; LP models live in cell-local coordinates
// (per-axis affine maps onto [-1,1]), WB models in global coordinates.
struct CellModel {
  BoxRegion cell;
  std::optional<MultiPoly> poly;
  std::optional<ChebModel> cheb;
  std::vector<AxisMap> to_local;

  double eval_at(std::span<const double> pt) const;
  Scalar eval_exact(std::span<const Scalar> pt) const;  // WB models only
};

struct LocalFit {
  int cell_index = -1;
  std::optional<CellModel> model;
  std::optional<Failure> error;
  FitReport report;
};

// Independent per-cell fits; failing cells carry their error without
// aborting siblings. jobs > 1 fans the cells out over worker threads.
std::vector<LocalFit> fit_local(const DataSet& S, const Partition& part,
                                const CellFitter& fitter, int jobs = 1);

struct MergePlan {
  size_t resample_per_node = 64;  // points drawn per child at each node
  CellFitter fitter;
};

struct MergeResult {
  CellModel root;
  // Max sup-norm change child -> parent per merge level, on child cells.
  std::vector<double> drift_per_level;
};

// Pairwise bottom-up merge: at each node, draw resample_per_node
// low-discrepancy points per child inside the child's cell, evaluate the
// child model, and refit on the union (WB merges refit with t = 0 since
// resampled data is model-generated). Deterministic for a fixed plan.
Outcome<MergeResult> merge_hierarchical(const std::vector<CellModel>& locals,
                                        const MergePlan& plan);

// Monomial-basis polynomial in global coordinates: WB models pass through,
// LP models are expanded and composed with the cell's affine maps.
MultiPoly cell_model_to_global_poly(const CellModel& model);

}  // namespace byzfit
