#include "byzfit/lpfit.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>

namespace byzfit {

namespace {

constexpr double kDomainTol = 1e-12;
const double kSqrt2 = std::sqrt(2.0);

std::vector<double> linspace(int count) {
  std::vector<double> pts(count);
  for (int i = 0; i < count; ++i) {
    pts[i] = count == 1 ? 0.0 : -1.0 + 2.0 * i / (count - 1);
  }
  return pts;
}

double point_coord(const DataSet& S, size_t row, int axis) {
  return S.xs[row][axis].dbl();
}

// Basis values prod_a T_{idx_a}(x_a) for every tensor index, row-major.
std::vector<double> tensor_basis_row(const std::vector<int>& degrees,
                                     const std::vector<double>& point) {
  std::vector<std::vector<double>> rows;
  rows.reserve(degrees.size());
  for (size_t a = 0; a < degrees.size(); ++a) {
    rows.push_back(chebyshev_row(degrees[a], point[a]));
  }
  size_t total = 1;
  for (int d : degrees) total *= d + 1;
  std::vector<double> out;
  out.reserve(total);
  std::vector<int> idx(degrees.size(), 0);
  for (size_t flat = 0; flat < total; ++flat) {
    double v = 1.0;
    for (size_t a = 0; a < degrees.size(); ++a) v *= rows[a][idx[a]];
    out.push_back(v);
    for (size_t a = degrees.size(); a-- > 0;) {
      if (idx[a] < degrees[a]) {
        ++idx[a];
        break;
      }
      idx[a] = 0;
    }
  }
  return out;
}

void push_band_pair(LPInstance& inst, RowKind kind, const std::vector<double>& basis,
                    double center, double band_delta_coeff, double halfwidth,
                    int sample_index) {
  const int nc = inst.ncoef();
  LPRow up{kind, std::vector<double>(nc + 1, 0.0), center + halfwidth, sample_index};
  LPRow dn{kind, std::vector<double>(nc + 1, 0.0), -center + halfwidth, sample_index};
  for (int v = 0; v < nc; ++v) {
    up.coeff[v] = basis[v];
    dn.coeff[v] = -basis[v];
  }
  up.coeff[nc] = band_delta_coeff;
  dn.coeff[nc] = band_delta_coeff;
  inst.rows.push_back(std::move(up));
  inst.rows.push_back(std::move(dn));
}

}  // namespace

int LPInstance::ncoef() const {
  int n = 1;
  for (int d : degrees) n *= d + 1;
  return n;
}

size_t LPInstance::count_rows(RowKind kind) const {
  size_t n = 0;
  for (const LPRow& r : rows) {
    if (r.kind == kind) ++n;
  }
  return n;
}

int default_grid_per_axis(int total_degree) {
  double d5 = std::pow(std::max(total_degree, 1), 5);
  return static_cast<int>(std::min(d5, 64.0));
}

LPInstance build_lp_tensor(const DataSet& S, const std::vector<int>& degrees,
                           int grid_per_axis) {
  S.validate();
  if (S.field.kind != FieldKind::Float64)
    throw std::invalid_argument("build_lp expects Float64 data");
  if (S.size() == 0) throw std::invalid_argument("build_lp: empty sample");
  if (degrees.size() != static_cast<size_t>(S.k))
    throw std::invalid_argument("build_lp: degree list does not match data dimension");
  for (int d : degrees) {
    if (d < 0) throw std::invalid_argument("build_lp: negative degree cap");
  }
  if (grid_per_axis < 2) throw std::invalid_argument("build_lp: grid_per_axis >= 2");

  LPInstance inst;
  inst.degrees = degrees;
  inst.grid_per_axis = grid_per_axis;
  const int nc = inst.ncoef();

  std::vector<double> pt(S.k);
  for (size_t s = 0; s < S.size(); ++s) {
    for (int a = 0; a < S.k; ++a) {
      pt[a] = point_coord(S, s, a);
      if (std::fabs(pt[a]) > 1.0 + kDomainTol) {
        throw std::invalid_argument("build_lp: coordinate outside [-1,1] at row " +
                                    std::to_string(s));
      }
    }
    double z = S.zs[s].dbl();
    if (std::fabs(z) > 1.0 + kDomainTol) {
      throw std::invalid_argument("build_lp: value outside [-1,1] at row " +
                                  std::to_string(s));
    }
    // f(x)-delta <= p(x) <= f(x)+delta, one pair per sample
    push_band_pair(inst, RowKind::SampleBand, tensor_basis_row(degrees, pt), z,
                   -1.0, 0.0, static_cast<int>(s));
  }

  // |c_v| <= sqrt(2), one pair per coefficient
  for (int v = 0; v < nc; ++v) {
    std::vector<double> unit(nc, 0.0);
    unit[v] = 1.0;
    push_band_pair(inst, RowKind::CoeffBox, unit, 0.0, 0.0, kSqrt2, -1);
  }

  // |p| <= 1 on the tensor grid over [-1,1]^k
  const std::vector<double> nodes = linspace(grid_per_axis);
  std::vector<int> gidx(S.k, 0);
  size_t grid_total = 1;
  for (int a = 0; a < S.k; ++a) grid_total *= nodes.size();
  for (size_t g = 0; g < grid_total; ++g) {
    for (int a = 0; a < S.k; ++a) pt[a] = nodes[gidx[a]];
    push_band_pair(inst, RowKind::GridBound, tensor_basis_row(degrees, pt), 0.0,
                   0.0, 1.0, -1);
    for (int a = S.k; a-- > 0;) {
      if (gidx[a] < static_cast<int>(nodes.size()) - 1) {
        ++gidx[a];
        break;
      }
      gidx[a] = 0;
    }
  }
  return inst;
}

LPInstance build_lp(const DataSet& S, int n, int m, int grid_per_axis) {
  if (S.k != 2) throw std::invalid_argument("build_lp(n, m) expects k=2 data");
  return build_lp_tensor(S, {n, m}, grid_per_axis);
}

Outcome<ChebModel> solve_lp(const LPInstance& inst, LPSolveStats* stats,
                            const SimplexOptions& opts) {
  const int nc = inst.ncoef();
  const int cols = 2 * nc + 1;  // free coefficients split +/-, delta last
  std::vector<std::vector<double>> A;
  std::vector<double> b;
  A.reserve(inst.rows.size());
  b.reserve(inst.rows.size());
  for (const LPRow& row : inst.rows) {
    if (row.coeff.size() != static_cast<size_t>(nc) + 1)
      throw std::invalid_argument("LPRow width does not match instance");
    std::vector<double> arow(cols, 0.0);
    for (int v = 0; v < nc; ++v) {
      arow[2 * v] = row.coeff[v];
      arow[2 * v + 1] = -row.coeff[v];
    }
    arow[cols - 1] = row.coeff[nc];
    A.push_back(std::move(arow));
    b.push_back(row.rhs);
  }
  std::vector<double> c(cols, 0.0);
  c[cols - 1] = -1.0;  // maximize -delta

  SimplexResult res = simplex_solve(A, b, c, opts);
  if (stats) {
    stats->pivots = res.pivots;
    stats->rows = inst.rows.size();
  }
  if (res.status == SimplexResult::Status::Infeasible) {
    std::string detail = "LP infeasible";
    if (res.infeasible_row >= 0 &&
        res.infeasible_row < static_cast<int>(inst.rows.size())) {
      const LPRow& r = inst.rows[res.infeasible_row];
      const char* kind = r.kind == RowKind::SampleBand ? "SampleBand"
                         : r.kind == RowKind::CoeffBox ? "CoeffBox"
                                                       : "GridBound";
      detail += std::string("; certificate row ") +
                std::to_string(res.infeasible_row) + " (" + kind;
      if (r.sample_index >= 0) detail += ", sample " + std::to_string(r.sample_index);
      detail += ")";
    }
    return Failure{Fail::Infeasible, detail};
  }
  if (res.status != SimplexResult::Status::Optimal) {
    return Failure{Fail::NumericalFailure,
                   res.status == SimplexResult::Status::Unbounded
                       ? "LP unbounded (malformed instance)"
                       : "simplex pivot limit reached"};
  }

  ChebModel model;
  model.vars = static_cast<int>(inst.degrees.size());
  model.degrees = inst.degrees;
  model.coeffs.resize(nc);
  for (int v = 0; v < nc; ++v) {
    model.coeffs[v] = res.x[2 * v] - res.x[2 * v + 1];
  }
  model.delta_achieved = res.x[cols - 1];
  return model;
}

uint64_t sample_size(int d, double delta, double C) {
  if (d < 1) throw std::invalid_argument("sample_size: d >= 1");
  if (!(delta > 0.0)) throw std::invalid_argument("sample_size: delta > 0");
  if (!(C > 0.0)) throw std::invalid_argument("sample_size: C > 0");
  double raw = 0.0;
  if (delta < d) {
    raw = C * (static_cast<double>(d) * d / delta) * std::log(d / delta);
  }
  uint64_t floor_count = static_cast<uint64_t>(d + 1) * static_cast<uint64_t>(d + 1);
  uint64_t n = raw <= 0.0 ? 0 : static_cast<uint64_t>(std::ceil(raw - 1e-9));
  return std::max(n, floor_count);
}

void FilterConfig::validate() const {
  if (d < 1) throw std::invalid_argument("FilterConfig: d >= 1");
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("FilterConfig: 0 < delta < 1");
  if (!(rho_clean > 0.0 && rho_clean <= 1.0))
    throw std::invalid_argument("FilterConfig: 0 < rho_clean <= 1");
  if (!(halfwidth() > 0.0))
    throw std::invalid_argument("FilterConfig: square_halfwidth > 0");
}

double FilterConfig::halfwidth() const {
  if (square_halfwidth) return *square_halfwidth;
  return delta / (static_cast<double>(d) * d * d);
}

size_t FilterConfig::target() const {
  if (target_count) return *target_count;
  return static_cast<size_t>(
      std::ceil(static_cast<double>(d) * d / delta - 1e-9));
}

Outcome<DataSet> byzantine_filter(const DataSet& S, const FilterConfig& cfg) {
  cfg.validate();
  S.validate();
  if (S.field.kind != FieldKind::Float64)
    throw std::invalid_argument("byzantine_filter expects Float64 data");
  const size_t n = S.size();
  const double h = cfg.halfwidth();
  const double band = 2.0 * cfg.delta;

  std::vector<bool> kept(n, false);
  size_t kept_count = 0;
  std::vector<size_t> in_square;
  std::vector<double> values;

  for (size_t seed = 0; seed < n; ++seed) {
    if (kept[seed]) continue;  // already consumed into S'
    in_square.clear();
    values.clear();
    for (size_t j = 0; j < n; ++j) {
      bool inside = true;
      for (int a = 0; a < S.k && inside; ++a) {
        inside = std::fabs(point_coord(S, j, a) - point_coord(S, seed, a)) <= h;
      }
      if (inside) {
        in_square.push_back(j);
        values.push_back(S.zs[j].dbl());
      }
    }
    double center;
    if (cfg.center_rule == FilterConfig::Center::Mean) {
      center = std::accumulate(values.begin(), values.end(), 0.0) /
               static_cast<double>(values.size());
    } else {
      std::vector<double> sorted = values;
      std::sort(sorted.begin(), sorted.end());
      size_t mid = sorted.size() / 2;
      center = sorted.size() % 2 == 1
                   ? sorted[mid]
                   : 0.5 * (sorted[mid - 1] + sorted[mid]);
    }
    for (size_t idx = 0; idx < in_square.size(); ++idx) {
      if (std::fabs(values[idx] - center) <= band && !kept[in_square[idx]]) {
        kept[in_square[idx]] = true;
        ++kept_count;
      }
    }
    if (kept_count > cfg.target()) {
      std::vector<size_t> rows;
      rows.reserve(kept_count);
      for (size_t i = 0; i < n; ++i) {
        if (kept[i]) rows.push_back(i);
      }
      return S.subset(rows);
    }
  }
  return Failure{Fail::InsufficientCleanData,
                 "filter collected " + std::to_string(kept_count) + " of " +
                     std::to_string(cfg.target() + 1) + " required points"};
}

Outcome<FitReport> fit_robust(const DataSet& S, const FilterConfig& cfg, int n,
                              int m, int grid_per_axis,
                              const MultiPoly* reference) {
  const auto t_start = std::chrono::steady_clock::now();
  auto filtered = byzantine_filter(S, cfg);
  if (!filtered.ok()) return filtered.failure();

  LPInstance inst = build_lp(filtered.value(), n, m, grid_per_axis);
  LPSolveStats stats;
  auto solved = solve_lp(inst, &stats);
  if (!solved.ok()) return solved.failure();
  ChebModel model = std::move(solved).take();

  FitReport rep;
  rep.cheb = model;
  rep.delta_achieved = model.delta_achieved;
  rep.filtered_size = static_cast<int64_t>(filtered.value().size());
  rep.lp_rows = stats.rows;
  rep.pivots = stats.pivots;
  rep.fitted_degree = n + m;

  // Residual stats on the unfiltered input; flags mark points beyond twice
  // the configured noise band from the fitted surface.
  double mx = 0.0, sum = 0.0;
  std::vector<double> pt(S.k);
  for (size_t i = 0; i < S.size(); ++i) {
    for (int a = 0; a < S.k; ++a) pt[a] = point_coord(S, i, a);
    double r = std::fabs(S.zs[i].dbl() - model.eval(pt));
    mx = std::max(mx, r);
    sum += r;
    if (r > 2.0 * cfg.delta) rep.flagged.push_back(S.origin_index(i));
  }
  rep.residual_max = mx;
  rep.residual_mean = S.size() ? sum / static_cast<double>(S.size()) : 0.0;

  if (reference) {
    rep.sup_vs_truth = sup_distance_on_grid(model, *reference, 101);
  }
  int prescribed = static_cast<int>(
      std::pow(std::max(n + m, 1), 5));
  if (grid_per_axis != prescribed) {
    rep.notes = "grid I uses " + std::to_string(grid_per_axis) +
                " points per axis instead of the prescribed d^5 = " +
                std::to_string(prescribed);
  }
  rep.elapsed_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - t_start)
                       .count();
  return rep;
}

RescaleResult rescale(const DataSet& S) {
  S.validate();
  if (S.field.kind != FieldKind::Float64)
    throw std::invalid_argument("rescale expects Float64 data");
  if (S.size() == 0) throw std::invalid_argument("rescale: empty dataset");

  RescaleResult out;
  out.data = S;
  out.maps.resize(S.k + 1);
  for (int a = 0; a <= S.k; ++a) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (size_t i = 0; i < S.size(); ++i) {
      double v = a < S.k ? point_coord(S, i, a) : S.zs[i].dbl();
      if (!std::isfinite(v))
        throw std::invalid_argument("rescale: non-finite value in data");
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    AxisMap map;
    if (lo >= -1.0 && hi <= 1.0) {
      // already scaled; identity keeps the operation idempotent
    } else if (hi == lo) {
      map.scale = 0.0;
      map.offset = 0.0;
      map.degenerate = true;
      out.any_degenerate = true;
    } else {
      map.scale = 2.0 / (hi - lo);
      map.offset = -1.0 - map.scale * lo;
    }
    out.maps[a] = map;
  }
  for (size_t i = 0; i < S.size(); ++i) {
    for (int a = 0; a < S.k; ++a) {
      out.data.xs[i][a] = Scalar::f64(out.maps[a](point_coord(S, i, a)));
    }
    out.data.zs[i] = Scalar::f64(out.maps[S.k](S.zs[i].dbl()));
  }
  return out;
}

namespace {

// Visits every node of the endpoint-inclusive tensor grid.
template <typename Fn>
void for_grid(int k, int per_axis, Fn&& fn) {
  std::vector<double> nodes = linspace(per_axis);
  std::vector<int> idx(k, 0);
  std::vector<double> pt(k);
  size_t total = 1;
  for (int a = 0; a < k; ++a) total *= nodes.size();
  for (size_t g = 0; g < total; ++g) {
    for (int a = 0; a < k; ++a) pt[a] = nodes[idx[a]];
    fn(pt);
    for (int a = k; a-- > 0;) {
      if (idx[a] < static_cast<int>(nodes.size()) - 1) {
        ++idx[a];
        break;
      }
      idx[a] = 0;
    }
  }
}

}  // namespace

double sup_on_grid(const ChebModel& model, int per_axis) {
  double sup = 0.0;
  for_grid(model.vars, per_axis, [&](const std::vector<double>& pt) {
    sup = std::max(sup, std::fabs(model.eval(pt)));
  });
  return sup;
}

double sup_distance_on_grid(const ChebModel& model, const MultiPoly& reference,
                            int per_axis) {
  if (reference.vars() != model.vars)
    throw std::invalid_argument("sup_distance_on_grid: dimension mismatch");
  double sup = 0.0;
  std::vector<Scalar> spt(model.vars, Scalar::f64(0.0));
  for_grid(model.vars, per_axis, [&](const std::vector<double>& pt) {
    for (int a = 0; a < model.vars; ++a) spt[a] = Scalar::f64(pt[a]);
    double ref = reference.eval(spt).dbl();
    sup = std::max(sup, std::fabs(model.eval(pt) - ref));
  });
  return sup;
}

DerivativeAudit derivative_bound_audit(const ChebModel& model, int grid_per_axis) {
  DerivativeAudit audit;
  audit.sup_grad.assign(model.vars, 0.0);
  for_grid(model.vars, grid_per_axis, [&](const std::vector<double>& pt) {
    audit.sup_p = std::max(audit.sup_p, std::fabs(model.eval(pt)));
    for (int a = 0; a < model.vars; ++a) {
      audit.sup_grad[a] =
          std::max(audit.sup_grad[a], std::fabs(model.eval_deriv(pt, a)));
    }
  });
  int dtot = std::accumulate(model.degrees.begin(), model.degrees.end(), 0);
  double denom = static_cast<double>(dtot) * dtot * audit.sup_p;
  double worst = *std::max_element(audit.sup_grad.begin(), audit.sup_grad.end());
  audit.ratio = denom > 0.0 ? worst / denom : 0.0;
  return audit;
}

}  // namespace byzfit
