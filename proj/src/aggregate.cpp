#include "byzfit/aggregate.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <map>
#include <stdexcept>

#include "byzfit/mvwb.hpp"
#include "byzfit/rng.hpp"

namespace byzfit {

bool BoxRegion::contains(std::span<const double> pt) const {
  for (size_t a = 0; a < lo.size(); ++a) {
    if (pt[a] < lo[a] || pt[a] > hi[a]) return false;
  }
  return true;
}

BoxRegion BoxRegion::hull(const BoxRegion& a, const BoxRegion& b) {
  BoxRegion out = a;
  for (size_t i = 0; i < out.lo.size(); ++i) {
    out.lo[i] = std::min(out.lo[i], b.lo[i]);
    out.hi[i] = std::max(out.hi[i], b.hi[i]);
  }
  return out;
}

std::vector<int> Partition::split_counts(int k, int total_cells) {
  if (k < 1 || total_cells < 1)
    throw std::invalid_argument("split_counts: k >= 1, cells >= 1");
  std::vector<int> counts(k, 1);
  int remaining = total_cells;
  // Greedy near-balanced factorization, largest factors first.
  for (int a = 0; a < k && remaining > 1; ++a) {
    int axes_left = k - a;
    int target = static_cast<int>(
        std::round(std::pow(static_cast<double>(remaining), 1.0 / axes_left)));
    target = std::max(target, 1);
    while (target > 1 && remaining % target != 0) --target;
    if (a == k - 1) target = remaining;
    counts[a] = target;
    remaining /= target;
  }
  return counts;
}

Partition Partition::uniform_grid(const BoxRegion& domain,
                                  const std::vector<int>& cells_per_axis,
                                  const DataSet& data) {
  const int k = static_cast<int>(domain.lo.size());
  if (static_cast<int>(cells_per_axis.size()) != k)
    throw std::invalid_argument("uniform_grid: per-axis count mismatch");
  for (int c : cells_per_axis) {
    if (c < 1) throw std::invalid_argument("uniform_grid: counts >= 1");
  }
  Partition part;
  size_t total = 1;
  for (int c : cells_per_axis) total *= static_cast<size_t>(c);
  part.cells.reserve(total);
  std::vector<int> idx(k, 0);
  for (size_t ci = 0; ci < total; ++ci) {
    BoxRegion cell;
    cell.lo.resize(k);
    cell.hi.resize(k);
    for (int a = 0; a < k; ++a) {
      double w = (domain.hi[a] - domain.lo[a]) / cells_per_axis[a];
      cell.lo[a] = domain.lo[a] + idx[a] * w;
      cell.hi[a] = idx[a] + 1 == cells_per_axis[a] ? domain.hi[a]
                                                   : domain.lo[a] + (idx[a] + 1) * w;
    }
    part.cells.push_back(std::move(cell));
    for (int a = k; a-- > 0;) {
      if (idx[a] + 1 < cells_per_axis[a]) {
        ++idx[a];
        break;
      }
      idx[a] = 0;
    }
  }

  part.assignment.assign(data.size(), -1);
  for (size_t i = 0; i < data.size(); ++i) {
    std::vector<int> cidx(k);
    size_t flat = 0;
    for (int a = 0; a < k; ++a) {
      double v = data.xs[i][a].to_double();
      double w = (domain.hi[a] - domain.lo[a]) / cells_per_axis[a];
      int c = w > 0 ? static_cast<int>(std::floor((v - domain.lo[a]) / w)) : 0;
      c = std::clamp(c, 0, cells_per_axis[a] - 1);
      flat = flat * cells_per_axis[a] + c;
      cidx[a] = c;
    }
    part.assignment[i] = static_cast<int>(flat);
  }
  return part;
}

namespace {

std::vector<AxisMap> cell_maps(const BoxRegion& cell) {
  std::vector<AxisMap> maps(cell.lo.size());
  for (size_t a = 0; a < cell.lo.size(); ++a) {
    double w = cell.hi[a] - cell.lo[a];
    if (w <= 0) {
      maps[a].degenerate = true;
      maps[a].scale = 0.0;
    } else {
      maps[a].scale = 2.0 / w;
      maps[a].offset = -1.0 - maps[a].scale * cell.lo[a];
    }
  }
  return maps;
}

}  // namespace

double CellModel::eval_at(std::span<const double> pt) const {
  if (poly) {
    if (poly->field().kind == FieldKind::PrimeField) {
      throw std::invalid_argument(
          "GF models have no continuous evaluation; merge over rational data");
    }
    std::vector<Scalar> spt;
    spt.reserve(pt.size());
    if (poly->field().kind == FieldKind::Float64) {
      for (double v : pt) spt.push_back(Scalar::f64(v));
      return poly->eval(spt).dbl();
    }
    for (double v : pt) {
      spt.push_back(Scalar::rational(mpq_class(v)));
    }
    return poly->eval(spt).to_double();
  }
  std::vector<double> local(pt.size());
  for (size_t a = 0; a < pt.size(); ++a) local[a] = to_local[a](pt[a]);
  return cheb->eval(local);
}

Scalar CellModel::eval_exact(std::span<const Scalar> pt) const {
  if (!poly) throw std::invalid_argument("exact evaluation needs a WB model");
  return poly->eval(pt);
}

namespace {

LocalFit fit_one_cell(const DataSet& S, const Partition& part,
                      const CellFitter& fitter, int cell) {
  LocalFit out;
  out.cell_index = cell;
  std::vector<size_t> rows;
  for (size_t i = 0; i < S.size(); ++i) {
    if (part.assignment[i] == cell) rows.push_back(i);
  }
  try {
    DataSet cell_data = S.subset(rows);
    if (fitter.kind == CellFitter::Kind::WB) {
      auto decoded = decode_with_locator(cell_data.xs, cell_data.zs, S.k,
                                         fitter.wb_degree, fitter.wb_t, 0);
      if (!decoded.ok()) {
        out.error = decoded.failure();
        return out;
      }
      CellModel model;
      model.cell = part.cells[cell];
      model.poly = decoded.value().poly;
      out.report.poly = decoded.value().poly;
      out.report.locator = decoded.value().error_locator;
      for (size_t f : decoded.value().flagged) {
        out.report.flagged.push_back(cell_data.origin_index(f));
      }
      fill_poly_residuals(out.report, cell_data);
      out.model = std::move(model);
    } else {
      std::vector<AxisMap> maps = cell_maps(part.cells[cell]);
      DataSet local = cell_data;
      for (size_t i = 0; i < local.size(); ++i) {
        for (int a = 0; a < local.k; ++a) {
          local.xs[i][a] = Scalar::f64(maps[a](cell_data.xs[i][a].dbl()));
        }
      }
      LPInstance inst =
          build_lp(local, fitter.lp_degree_x, fitter.lp_degree_y, fitter.lp_grid);
      LPSolveStats stats;
      auto solved = solve_lp(inst, &stats);
      if (!solved.ok()) {
        out.error = solved.failure();
        return out;
      }
      CellModel model;
      model.cell = part.cells[cell];
      model.cheb = std::move(solved).take();
      model.to_local = maps;
      out.report.cheb = model.cheb;
      out.report.delta_achieved = model.cheb->delta_achieved;
      out.report.lp_rows = stats.rows;
      out.report.pivots = stats.pivots;
      out.model = std::move(model);
    }
  } catch (const std::exception& e) {
    out.error = Failure{Fail::InvalidInput, e.what()};
  }
  return out;
}

}  // namespace

std::vector<LocalFit> fit_local(const DataSet& S, const Partition& part,
                                const CellFitter& fitter, int jobs) {
  S.validate();
  if (part.assignment.size() != S.size())
    throw std::invalid_argument("fit_local: partition does not match dataset");
  const int ncells = static_cast<int>(part.cells.size());
  std::vector<LocalFit> out(ncells);
  if (jobs <= 1) {
    for (int c = 0; c < ncells; ++c) out[c] = fit_one_cell(S, part, fitter, c);
    return out;
  }
  std::vector<std::future<LocalFit>> futs;
  futs.reserve(ncells);
  for (int c = 0; c < ncells; ++c) {
    futs.push_back(std::async(std::launch::async, fit_one_cell, std::cref(S),
                              std::cref(part), std::cref(fitter), c));
  }
  for (int c = 0; c < ncells; ++c) out[c] = futs[c].get();
  return out;
}

namespace {

// Deterministic resample of a child model inside its cell. Exact (WB)
// children sample integer coordinates, axis 0 strictly increasing inside
// the cell so merged unions keep distinct locator coordinates; float (LP)
// children use Halton points in the cell interior.
Outcome<DataSet> resample_child(const CellModel& child, size_t count,
                                uint64_t halton_salt) {
  const int k = static_cast<int>(child.cell.lo.size());
  DataSet out;
  out.k = k;
  // integer range of a cell along one axis, excluding an integral upper
  // face (cells are half-open there; the face belongs to the neighbor)
  auto int_range = [&](int a) {
    long lo = static_cast<long>(std::ceil(child.cell.lo[a]));
    double h = child.cell.hi[a];
    long hi = static_cast<long>(std::floor(h));
    if (static_cast<double>(hi) == h) --hi;
    return std::pair<long, long>{lo, hi};
  };
  if (child.poly) {
    out.field = child.poly->field();
    auto [lo0, hi0] = int_range(0);
    if (hi0 - lo0 + 1 < static_cast<long>(count)) {
      return Failure{Fail::InvalidInput,
                     "cell axis 0 holds fewer integers than resample count"};
    }
    for (size_t i = 0; i < count; ++i) {
      std::vector<Scalar> pt;
      pt.reserve(k);
      // even spread across the available integer range
      long span = hi0 - lo0;
      long x0 = lo0 + static_cast<long>(
                          count == 1 ? 0 : span * i / (count - 1));
      pt.push_back(Scalar::from_int(x0, out.field));
      for (int a = 1; a < k; ++a) {
        auto [lo, hi] = int_range(a);
        if (hi < lo) hi = lo;
        double u = halton(i + 1 + halton_salt, a == 1 ? 3 : 5);
        long v = lo + static_cast<long>(u * static_cast<double>(hi - lo + 1));
        pt.push_back(Scalar::from_int(std::min(v, hi), out.field));
      }
      out.zs.push_back(child.poly->eval(pt));
      out.xs.push_back(std::move(pt));
    }
    // duplicate coordinates can appear when the integer range is tight;
    // keep the first occurrence of each point
    std::map<std::string, bool> seen;
    std::vector<size_t> keep;
    for (size_t i = 0; i < out.size(); ++i) {
      std::string key;
      for (const Scalar& c : out.xs[i]) key += c.str() + ",";
      if (!seen.count(key)) {
        seen[key] = true;
        keep.push_back(i);
      }
    }
    if (keep.size() != out.size()) out = out.subset(keep);
    return out;
  }

  out.field = Field::f64();
  static const uint32_t bases[] = {2, 3, 5, 7, 11, 13};
  for (size_t i = 0; i < count; ++i) {
    std::vector<Scalar> pt;
    pt.reserve(k);
    for (int a = 0; a < k; ++a) {
      double u = halton(i + 1 + halton_salt, bases[a % 6]);
      pt.push_back(Scalar::f64(child.cell.lo[a] +
                               u * (child.cell.hi[a] - child.cell.lo[a])));
    }
    std::vector<double> dpt(k);
    for (int a = 0; a < k; ++a) dpt[a] = pt[a].dbl();
    out.zs.push_back(Scalar::f64(child.eval_at(dpt)));
    out.xs.push_back(std::move(pt));
  }
  return out;
}

Outcome<CellModel> fit_node(const DataSet& merged, const BoxRegion& box,
                            const CellFitter& fitter) {
  if (fitter.kind == CellFitter::Kind::WB) {
    // resampled data is model-generated and clean, so t = 0
    auto decoded = decode_with_locator(merged.xs, merged.zs,
                                       static_cast<int>(box.lo.size()),
                                       fitter.wb_degree, 0, 0);
    if (!decoded.ok()) return decoded.failure();
    CellModel model;
    model.cell = box;
    model.poly = decoded.value().poly;
    return model;
  }
  std::vector<AxisMap> maps = cell_maps(box);
  DataSet local = merged;
  for (size_t i = 0; i < local.size(); ++i) {
    for (int a = 0; a < local.k; ++a) {
      local.xs[i][a] = Scalar::f64(maps[a](merged.xs[i][a].dbl()));
    }
  }
  LPInstance inst =
      build_lp(local, fitter.lp_degree_x, fitter.lp_degree_y, fitter.lp_grid);
  auto solved = solve_lp(inst);
  if (!solved.ok()) return solved.failure();
  CellModel model;
  model.cell = box;
  model.cheb = std::move(solved).take();
  model.to_local = maps;
  return model;
}

double drift_between(const CellModel& child, const CellModel& parent) {
  const int k = static_cast<int>(child.cell.lo.size());
  const int per_axis = 9;
  std::vector<int> idx(k, 0);
  std::vector<double> pt(k);
  size_t total = 1;
  for (int a = 0; a < k; ++a) total *= per_axis;
  double sup = 0.0;
  for (size_t g = 0; g < total; ++g) {
    for (int a = 0; a < k; ++a) {
      pt[a] = child.cell.lo[a] +
              (child.cell.hi[a] - child.cell.lo[a]) * idx[a] / (per_axis - 1);
    }
    sup = std::max(sup, std::fabs(child.eval_at(pt) - parent.eval_at(pt)));
    for (int a = k; a-- > 0;) {
      if (idx[a] + 1 < per_axis) {
        ++idx[a];
        break;
      }
      idx[a] = 0;
    }
  }
  return sup;
}

}  // namespace

MultiPoly cell_model_to_global_poly(const CellModel& model) {
  if (model.poly) return *model.poly;
  if (!model.cheb) throw std::invalid_argument("cell model holds no model");
  MultiPoly local = cheb_to_monomial(*model.cheb);
  const int k = local.vars();
  const Field F = Field::f64();
  // substitute x_local = scale*x + offset per axis
  int max_e = 0;
  for (const auto& [e, c] : local.terms()) {
    for (uint32_t v : e) max_e = std::max(max_e, static_cast<int>(v));
  }
  std::vector<std::vector<MultiPoly>> axis_pows(k);
  for (int a = 0; a < k; ++a) {
    MultiPoly lin(k, F);
    Exponents ve(k, 0);
    ve[a] = 1;
    lin.add_term(ve, Scalar::f64(model.to_local[a].scale));
    lin.add_term(Exponents(k, 0), Scalar::f64(model.to_local[a].offset));
    axis_pows[a].push_back(MultiPoly::constant(k, Scalar::f64(1.0)));
    for (int e = 1; e <= max_e; ++e) {
      axis_pows[a].push_back(axis_pows[a].back() * lin);
    }
  }
  MultiPoly global(k, F);
  for (const auto& [e, c] : local.terms()) {
    MultiPoly term = MultiPoly::constant(k, c);
    for (int a = 0; a < k; ++a) {
      if (e[a] > 0) term = term * axis_pows[a][e[a]];
    }
    global = global + term;
  }
  return global;
}

Outcome<MergeResult> merge_hierarchical(const std::vector<CellModel>& locals,
                                        const MergePlan& plan) {
  if (locals.empty())
    throw std::invalid_argument("merge_hierarchical: no local models");
  for (const CellModel& c : locals) {
    if (c.poly && c.poly->field().kind == FieldKind::PrimeField) {
      return Failure{Fail::InvalidInput,
                     "hierarchical merge over GF(q) models is not supported; "
                     "use rational or float data"};
    }
  }
  std::vector<CellModel> level = locals;
  MergeResult result;
  int level_no = 0;
  while (level.size() > 1) {
    std::vector<CellModel> next;
    double level_drift = 0.0;
    for (size_t i = 0; i + 1 < level.size(); i += 2) {
      const CellModel& a = level[i];
      const CellModel& b = level[i + 1];
      auto sa = resample_child(a, plan.resample_per_node, 0);
      if (!sa.ok()) return sa.failure();
      auto sb = resample_child(b, plan.resample_per_node,
                               plan.resample_per_node + 1);
      if (!sb.ok()) return sb.failure();
      DataSet merged = sa.value();
      merged.origin.clear();
      merged.labels.clear();
      for (size_t r = 0; r < sb.value().size(); ++r) {
        merged.xs.push_back(sb.value().xs[r]);
        merged.zs.push_back(sb.value().zs[r]);
      }
      // drop coordinate collisions across the two children (self-merge)
      {
        std::map<std::string, bool> seen;
        std::vector<size_t> keep;
        for (size_t r = 0; r < merged.size(); ++r) {
          std::string key;
          for (const Scalar& c : merged.xs[r]) key += c.str() + ",";
          if (!seen.count(key)) {
            seen[key] = true;
            keep.push_back(r);
          }
        }
        if (keep.size() != merged.size()) merged = merged.subset(keep);
      }
      Outcome<CellModel> node = [&]() -> Outcome<CellModel> {
        try {
          return fit_node(merged, BoxRegion::hull(a.cell, b.cell), plan.fitter);
        } catch (const std::exception& e) {
          return Failure{Fail::InvalidInput, e.what()};
        }
      }();
      if (!node.ok()) return node.failure();
      level_drift = std::max(level_drift, drift_between(a, node.value()));
      level_drift = std::max(level_drift, drift_between(b, node.value()));
      next.push_back(std::move(node).take());
    }
    if (level.size() % 2 == 1) next.push_back(level.back());
    result.drift_per_level.push_back(level_drift);
    level = std::move(next);
    ++level_no;
    if (level_no > 64) {
      return Failure{Fail::NumericalFailure, "merge tree failed to shrink"};
    }
  }
  result.root = level.front();
  return result;
}

}  // namespace byzfit
