// byzfit: reconstruct polynomials from noisy and partially corrupted samples.
//
// Subcommands: gen, fit (wb1d|wbmv|lp), filter, aggregate, eval, verify.
// Exit codes: 0 success, 2 usage/config error, 3 algorithmic failure
// (the failure kind is in the report and on stderr).

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <optional>

#include "byzfit/aggregate.hpp"
#include "byzfit/chebyshev.hpp"
#include "byzfit/generator.hpp"
#include "byzfit/json_io.hpp"
#include "byzfit/lpfit.hpp"
#include "byzfit/mvwb.hpp"
#include "byzfit/poly_expr.hpp"
#include "byzfit/wb.hpp"

using namespace byzfit;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitAlgorithm = 3;

struct GlobalOpts {
  std::optional<uint64_t> seed;
  bool strict = false;
  int jobs = 1;

  uint64_t seed_or_default() const {
    if (seed) return *seed;
    if (strict) throw std::invalid_argument("--seed is required in --strict mode");
    return 0;
  }
};

Field parse_field(const std::string& name, uint64_t modulus) {
  if (name == "rational") return Field::rational();
  if (name == "float") return Field::f64();
  if (name == "gf") {
    if (modulus == 0) throw std::invalid_argument("gf field needs --modulus");
    return Field::gf(modulus);
  }
  throw std::invalid_argument("unknown field: " + name);
}

std::vector<std::pair<double, double>> parse_box(const std::string& text) {
  std::vector<std::pair<double, double>> box;
  if (text.empty()) return box;
  std::istringstream ss(text);
  std::string axis;
  while (std::getline(ss, axis, ',')) {
    auto colon = axis.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("box axis must be lo:hi, got " + axis);
    box.emplace_back(std::stod(axis.substr(0, colon)),
                     std::stod(axis.substr(colon + 1)));
  }
  return box;
}

void write_report(const std::string& path, const FitReport& rep) {
  write_file_atomic(path, report_to_json(rep).dump(2) + "\n");
}

int fail_report(const std::string& path, nlohmann::json config,
                const Failure& f) {
  nlohmann::json j;
  j["error"] = {{"kind", fail_name(f.code)}, {"detail", f.detail}};
  j["config"] = std::move(config);
  if (!path.empty()) write_file_atomic(path, j.dump(2) + "\n");
  std::cerr << "fit failed: " << fail_name(f.code) << ": " << f.detail << "\n";
  return kExitAlgorithm;
}

// ---------------------------------------------------------------- gen ----

int cmd_gen(const GlobalOpts& g, const std::string& truth_expr,
            const std::string& field_name, uint64_t modulus, size_t n,
            const std::string& noise_spec, double beta,
            const std::string& corrupt_spec, const std::string& box_spec,
            const std::string& out) {
  Field field = parse_field(field_name, modulus);
  Generator gen(parse_poly(truth_expr, field));

  if (noise_spec != "none") {
    auto colon = noise_spec.find(':');
    std::string kind = noise_spec.substr(0, colon);
    std::string arg = colon == std::string::npos ? "" : noise_spec.substr(colon + 1);
    if (kind == "uniform") {
      gen.noise = NoiseKind::UniformBand;
      gen.noise_delta = std::stod(arg);
    } else if (kind == "alphabet") {
      gen.noise = NoiseKind::DiscreteAlphabet;
      gen.alphabet_half_width = std::stol(arg);
    } else {
      throw std::invalid_argument("noise must be none|uniform:D|alphabet:W");
    }
  }
  gen.beta = beta;
  if (corrupt_spec.rfind("constant:", 0) == 0) {
    gen.corrupt = CorruptKind::Constant;
    gen.constant_value = std::stod(corrupt_spec.substr(9));
  } else if (corrupt_spec == "uniform") {
    gen.corrupt = CorruptKind::UniformInBox;
  } else if (corrupt_spec == "adversarial") {
    gen.corrupt = CorruptKind::Adversarial;
  } else {
    throw std::invalid_argument("corrupt must be adversarial|uniform|constant:V");
  }
  gen.box = parse_box(box_spec);
  gen.seed = g.seed_or_default();

  DataSet ds = generate(gen, n);
  write_dataset(ds, out);
  std::cout << "wrote " << ds.size() << " rows to " << out << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------- fit ----

int cmd_fit_wb1d(const DataSet& ds, int d, std::optional<int> t,
                 std::optional<double> rho, long delta_w,
                 const EnumerateOptions& opts, nlohmann::json config,
                 const std::string& out) {
  if (ds.k != 1) throw std::invalid_argument("fit wb1d expects 1-D data");
  if (!t && !rho) throw std::invalid_argument("fit wb1d needs --t or --rho");
  double rho_clean =
      rho ? *rho
          : 1.0 - static_cast<double>(*t) / static_cast<double>(ds.size());
  auto res = noise_enumerate_fit(
      ds, rho_clean, d, NoiseAlphabet::integer_band(delta_w, ds.field), opts);
  if (!res.ok()) return fail_report(out, config, res.failure());
  FitReport rep = std::move(res).take();
  rep.config = std::move(config);
  write_report(out, rep);
  std::cout << "fit wb1d: poly = " << rep.poly->str() << ", flagged "
            << rep.flagged.size() << " of " << ds.size() << "\n";
  return kExitOk;
}

int cmd_fit_wbmv(const DataSet& ds, int d, int t, int axis, long delta_w,
                 std::optional<double> rho, const EnumerateOptions& opts,
                 nlohmann::json config, const std::string& out) {
  if (ds.k < 2) throw std::invalid_argument("fit wbmv expects k >= 2 data");
  FitReport rep;
  if (delta_w > 0 || rho) {
    double rho_clean =
        rho ? *rho
            : 1.0 - static_cast<double>(t) / static_cast<double>(ds.size());
    auto res = mv_noise_enumerate_fit(
        ds, rho_clean, d, NoiseAlphabet::integer_band(delta_w, ds.field), opts);
    if (!res.ok()) return fail_report(out, config, res.failure());
    rep = std::move(res).take();
  } else {
    const auto t0 = std::chrono::steady_clock::now();
    MVProblem prob;
    prob.xs = ds.xs;
    prob.zs = ds.zs;
    prob.vars = ds.k;
    prob.degree = d;
    prob.t = t;
    prob.axis = axis;
    auto res = mv_wb_decode(prob);
    if (!res.ok()) return fail_report(out, config, res.failure());
    rep.poly = res.value().poly;
    rep.locator = res.value().error_locator;
    rep.q = res.value().q;
    for (size_t i : res.value().flagged) rep.flagged.push_back(ds.origin_index(i));
    rep.fitted_degree = d;
    rep.wb_calls = 1;
    fill_poly_residuals(rep, ds);
    rep.elapsed_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
  }
  rep.config = std::move(config);
  write_report(out, rep);
  std::cout << "fit wbmv: poly = " << rep.poly->str()
            << ", locator = " << rep.locator->str() << ", flagged "
            << rep.flagged.size() << "\n";
  return kExitOk;
}

int cmd_fit_lp(const DataSet& ds_in, int total_d, double delta, double rho,
               int deg_x, int deg_y, int grid, std::optional<double> halfwidth,
               std::optional<size_t> target, const std::string& center,
               bool no_filter, nlohmann::json config, const std::string& out) {
  if (ds_in.field.kind != FieldKind::Float64)
    throw std::invalid_argument("fit lp expects float data");
  if (ds_in.k != 2)
    throw std::invalid_argument("fit lp drives the bivariate pipeline");
  RescaleResult scaled = rescale(ds_in);
  bool identity = true;
  for (const auto& m : scaled.maps) {
    identity = identity && m.scale == 1.0 && m.offset == 0.0;
  }
  config["rescaled"] = !identity;
  if (!identity) {
    nlohmann::json maps = nlohmann::json::array();
    for (const auto& m : scaled.maps) {
      maps.push_back({{"scale", m.scale}, {"offset", m.offset}});
    }
    config["maps"] = std::move(maps);
  }
  const DataSet& ds = scaled.data;

  if (grid <= 0) grid = default_grid_per_axis(deg_x + deg_y);
  FitReport rep;
  if (no_filter) {
    LPInstance inst = build_lp(ds, deg_x, deg_y, grid);
    LPSolveStats stats;
    auto solved = solve_lp(inst, &stats);
    if (!solved.ok()) return fail_report(out, config, solved.failure());
    rep.cheb = std::move(solved).take();
    rep.delta_achieved = rep.cheb->delta_achieved;
    rep.lp_rows = stats.rows;
    rep.pivots = stats.pivots;
    rep.fitted_degree = deg_x + deg_y;
  } else {
    FilterConfig cfg;
    cfg.d = total_d > 0 ? total_d : deg_x + deg_y;
    cfg.delta = delta;
    cfg.rho_clean = rho;
    cfg.square_halfwidth = halfwidth;
    cfg.target_count = target;
    cfg.center_rule = center == "mean" ? FilterConfig::Center::Mean
                                       : FilterConfig::Center::Median;
    const MultiPoly* truth = ds.truth ? &*ds.truth : nullptr;
    auto res = fit_robust(ds, cfg, deg_x, deg_y, grid, truth);
    if (!res.ok()) return fail_report(out, config, res.failure());
    rep = std::move(res).take();
  }
  rep.config = std::move(config);
  write_report(out, rep);
  std::cout << "fit lp: delta_achieved = " << rep.delta_achieved
            << ", rows = " << rep.lp_rows << ", pivots = " << rep.pivots << "\n";
  return kExitOk;
}

// ------------------------------------------------------------- filter ----

int cmd_filter(const DataSet& ds, int d, double delta, double rho,
               std::optional<double> halfwidth, std::optional<size_t> target,
               const std::string& center, const std::string& out) {
  FilterConfig cfg;
  cfg.d = d;
  cfg.delta = delta;
  cfg.rho_clean = rho;
  cfg.square_halfwidth = halfwidth;
  cfg.target_count = target;
  cfg.center_rule =
      center == "mean" ? FilterConfig::Center::Mean : FilterConfig::Center::Median;
  auto res = byzantine_filter(ds, cfg);
  if (!res.ok()) {
    std::cerr << "filter failed: " << fail_name(res.code()) << ": "
              << res.failure().detail << "\n";
    return kExitAlgorithm;
  }
  write_dataset(res.value(), out);
  std::cout << "kept " << res.value().size() << " of " << ds.size()
            << " rows -> " << out << "\n";
  return kExitOk;
}

// ---------------------------------------------------------- aggregate ----

int cmd_aggregate(const GlobalOpts& g, const DataSet& ds, int cells,
                  const std::string& fitter_name, int d, int t, int deg_x,
                  int deg_y, int grid, size_t resample, nlohmann::json config,
                  const std::string& out) {
  CellFitter fitter;
  if (fitter_name == "wb") {
    fitter.kind = CellFitter::Kind::WB;
    fitter.wb_degree = d;
    fitter.wb_t = t;
  } else if (fitter_name == "lp") {
    fitter.kind = CellFitter::Kind::LP;
    fitter.lp_degree_x = deg_x;
    fitter.lp_degree_y = deg_y;
    fitter.lp_grid = grid > 0 ? grid : 12;
  } else {
    throw std::invalid_argument("fitter must be wb|lp");
  }

  // Domain box from the data; integral upper bounds are opened by one so
  // half-open cell semantics match the exact resampling convention.
  BoxRegion domain;
  domain.lo.resize(ds.k);
  domain.hi.resize(ds.k);
  for (int a = 0; a < ds.k; ++a) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (size_t i = 0; i < ds.size(); ++i) {
      lo = std::min(lo, ds.xs[i][a].to_double());
      hi = std::max(hi, ds.xs[i][a].to_double());
    }
    domain.lo[a] = lo;
    domain.hi[a] = ds.field.exact() ? hi + 1 : hi;
  }
  Partition part =
      Partition::uniform_grid(domain, Partition::split_counts(ds.k, cells), ds);

  auto fits = fit_local(ds, part, fitter, g.jobs);
  std::vector<CellModel> locals;
  nlohmann::json cell_reports = nlohmann::json::array();
  size_t failed = 0;
  for (const auto& lf : fits) {
    nlohmann::json cj;
    cj["cell"] = lf.cell_index;
    if (lf.error) {
      ++failed;
      cj["error"] = {{"kind", fail_name(lf.error->code)},
                     {"detail", lf.error->detail}};
    } else {
      locals.push_back(*lf.model);
      cj["delta_achieved"] = lf.report.delta_achieved;
    }
    cell_reports.push_back(std::move(cj));
  }
  if (locals.empty()) {
    return fail_report(out, config,
                       Failure{Fail::InsufficientCleanData, "all cells failed"});
  }

  MergePlan plan;
  plan.fitter = fitter;
  plan.resample_per_node = resample;
  auto merged = merge_hierarchical(locals, plan);
  if (!merged.ok()) return fail_report(out, config, merged.failure());

  FitReport rep;
  MultiPoly global = cell_model_to_global_poly(merged.value().root);
  rep.poly = global;
  fill_poly_residuals(rep, ds);
  config["cells"] = cells;
  config["cells_failed"] = failed;
  config["cell_reports"] = std::move(cell_reports);
  nlohmann::json drift = nlohmann::json::array();
  for (double dl : merged.value().drift_per_level) drift.push_back(dl);
  config["drift_per_level"] = std::move(drift);
  rep.config = std::move(config);
  write_report(out, rep);
  std::cout << "aggregate: merged " << locals.size() << " cell models ("
            << failed << " failed); root = " << global.str() << "\n";
  return kExitOk;
}

// --------------------------------------------------------------- eval ----

MultiPoly load_model_poly(const nlohmann::json& j) {
  const nlohmann::json& m = j.contains("model") ? j.at("model") : j;
  if (m.value("basis", "monomial") == "chebyshev") {
    return cheb_to_monomial(cheb_from_json(m));
  }
  return poly_from_json(m);
}

int cmd_eval(const std::string& model_path, const std::string& at) {
  nlohmann::json j = nlohmann::json::parse(read_file(model_path));
  MultiPoly p = load_model_poly(j);
  std::vector<Scalar> pt;
  std::istringstream ss(at);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    pt.push_back(scalar_from_string(cell, p.field()));
  }
  if (static_cast<int>(pt.size()) != p.vars())
    throw std::invalid_argument("--at needs " + std::to_string(p.vars()) +
                                " coordinates");
  std::cout << p.eval(pt).str() << "\n";
  return kExitOk;
}

// ------------------------------------------------------------- verify ----

// Independent re-check of a shipped report against raw data. Uses algebra
// primitives only (MultiPoly::eval / chebyshev_eval); never trusts the
// report's own residual numbers.
int cmd_verify(const std::string& report_path, const std::string& data_path,
               const std::string& truth_expr, std::optional<double> rho_flag,
               std::optional<double> delta_flag) {
  nlohmann::json rj = nlohmann::json::parse(read_file(report_path));
  if (rj.contains("error")) {
    std::cout << "FAIL: report records error " << rj["error"].value("kind", "?")
              << "\n";
    return kExitAlgorithm;
  }
  DataSet ds = read_dataset(data_path);

  double delta = 0.0;
  if (delta_flag) {
    delta = *delta_flag;
  } else if (rj.contains("config") && rj["config"].contains("delta")) {
    delta = rj["config"]["delta"].get<double>();
  } else {
    delta = rj.value("delta_achieved", 0.0);
  }
  double rho = 1.0;
  if (rho_flag) {
    rho = *rho_flag;
  } else if (rj.contains("config") && rj["config"].contains("rho")) {
    rho = rj["config"]["rho"].get<double>();
  } else if (rj.contains("config") && rj["config"].contains("t")) {
    rho = 1.0 - rj["config"]["t"].get<double>() / static_cast<double>(ds.size());
  }

  const nlohmann::json& mj = rj.at("model");
  size_t agree = 0;
  if (mj.value("basis", "monomial") == "chebyshev") {
    ChebModel cm = cheb_from_json(mj);
    if (ds.field.kind != FieldKind::Float64)
      throw std::invalid_argument("chebyshev model against non-float data");
    for (size_t i = 0; i < ds.size(); ++i) {
      // tensor sum computed directly from chebyshev_eval
      double v = 0.0;
      std::vector<int> idx(cm.degrees.size(), 0);
      for (size_t flat = 0; flat < cm.coeffs.size(); ++flat) {
        double term = cm.coeffs[flat];
        if (term != 0.0) {
          for (size_t a = 0; a < idx.size(); ++a) {
            term *= chebyshev_eval(idx[a], ds.xs[i][a].dbl());
          }
          v += term;
        }
        for (size_t a = idx.size(); a-- > 0;) {
          if (idx[a] < cm.degrees[a]) {
            ++idx[a];
            break;
          }
          idx[a] = 0;
        }
      }
      if (std::fabs(ds.zs[i].dbl() - v) <= delta + 1e-9) ++agree;
    }
  } else {
    MultiPoly p = poly_from_json(mj);
    if (p.field() != ds.field)
      throw std::invalid_argument("model field does not match dataset");
    if (ds.field.kind == FieldKind::Float64) {
      for (size_t i = 0; i < ds.size(); ++i) {
        if (std::fabs(ds.zs[i].dbl() - p.eval(ds.xs[i]).dbl()) <= delta + 1e-9)
          ++agree;
      }
    } else {
      NoiseAlphabet band =
          NoiseAlphabet::integer_band(static_cast<long>(delta), ds.field);
      if (ds.field.kind == FieldKind::Rational) {
        band.delta = Scalar::rational(mpq_class(delta));
      }
      for (size_t i = 0; i < ds.size(); ++i) {
        if (within_delta(ds.zs[i], p.eval(ds.xs[i]), band)) ++agree;
      }
    }
  }
  double fraction =
      ds.size() ? static_cast<double>(agree) / static_cast<double>(ds.size()) : 1.0;
  bool pass = fraction + 1e-12 >= rho;

  std::optional<double> sup;
  if (!truth_expr.empty()) {
    if (mj.value("basis", "monomial") == "chebyshev") {
      sup = sup_distance_on_grid(cheb_from_json(mj),
                                 parse_poly(truth_expr, Field::f64(), ds.k), 101);
    } else {
      MultiPoly truth = parse_poly(truth_expr, ds.field, ds.k);
      MultiPoly diff = poly_from_json(mj) - truth;
      if (ds.field.kind == FieldKind::PrimeField) {
        sup = diff.is_zero() ? 0.0 : std::numeric_limits<double>::infinity();
      } else {
        // audit over the dataset's own points (exact evaluation)
        double s = 0.0;
        for (size_t i = 0; i < ds.size(); ++i) {
          s = std::max(s, std::fabs(diff.eval(ds.xs[i]).to_double()));
        }
        sup = s;
      }
    }
  }

  std::cout << (pass ? "PASS" : "FAIL") << ": " << agree << "/" << ds.size()
            << " within delta=" << delta << " (need rho=" << rho << ")";
  if (sup) std::cout << ", sup_vs_truth=" << *sup;
  std::cout << "\n";
  return pass ? kExitOk : kExitAlgorithm;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"polynomial reconstruction from noisy and Byzantine data"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  GlobalOpts g;
  uint64_t seed_flag = 0;
  app.add_flag("--strict", g.strict, "require an explicit --seed");
  CLI::Option* seed_opt = app.add_option("--seed", seed_flag, "seed for all randomness");
  const char* env_jobs = std::getenv("BYZFIT_JOBS");
  g.jobs = env_jobs ? std::max(1, std::atoi(env_jobs)) : 1;
  app.add_option("--jobs", g.jobs, "worker thread cap");

  // gen
  auto* gen = app.add_subcommand("gen", "generate a synthetic dataset");
  std::string truth_expr, field_name = "rational", noise_spec = "none";
  std::string corrupt_spec = "adversarial", box_spec, out_path = "data.csv";
  uint64_t modulus = 0;
  size_t n_points = 0;
  double beta = 0.0;
  gen->add_option("--truth", truth_expr, "truth polynomial expression")->required();
  gen->add_option("--n", n_points, "number of points")->required();
  gen->add_option("--field", field_name, "rational|gf|float");
  gen->add_option("--modulus", modulus, "prime modulus for gf");
  gen->add_option("--noise", noise_spec, "none|uniform:D|alphabet:W");
  gen->add_option("--beta", beta, "corrupted fraction in [0,1)");
  gen->add_option("--corrupt", corrupt_spec, "adversarial|uniform|constant:V");
  gen->add_option("--box", box_spec, "per-axis domain lo:hi,lo:hi,...");
  gen->add_option("--out", out_path, "output CSV path");

  // fit
  auto* fit = app.add_subcommand("fit", "fit a polynomial to a dataset");
  fit->require_subcommand(1);
  std::string data_path, report_path = "report.json";
  int fit_d = 1, fit_t = 0, fit_axis = 0;
  long delta_w = 0;
  std::optional<int> fit_t_opt;
  std::optional<double> fit_rho;
  std::optional<size_t> subset_size;
  uint64_t budget = 10'000'000;
  std::optional<uint64_t> random_subset_seed;

  auto* wb1d = fit->add_subcommand("wb1d", "univariate WB with noise enumeration");
  wb1d->add_option("--data", data_path, "input CSV")->required();
  wb1d->add_option("--out", report_path, "output report path");
  wb1d->add_option("--d", fit_d, "degree bound")->required();
  wb1d->add_option("--t", fit_t_opt, "corruption bound");
  wb1d->add_option("--rho", fit_rho, "clean fraction");
  wb1d->add_option("--delta", delta_w, "integer noise half-width");
  wb1d->add_option("--subset-size", subset_size, "decoded subset size");
  wb1d->add_option("--budget", budget, "decoder call cap");
  wb1d->add_option("--subset-seed", random_subset_seed,
                   "random subset selection seed");

  auto* wbmv = fit->add_subcommand("wbmv", "multivariate WB decoding");
  wbmv->add_option("--data", data_path, "input CSV")->required();
  wbmv->add_option("--out", report_path, "output report path");
  wbmv->add_option("--d", fit_d, "total degree bound")->required();
  wbmv->add_option("--t", fit_t, "corruption bound")->required();
  wbmv->add_option("--axis", fit_axis, "distinct-coordinate axis");
  wbmv->add_option("--delta", delta_w, "integer noise half-width (enumeration)");
  wbmv->add_option("--rho", fit_rho, "clean fraction (enumeration)");
  wbmv->add_option("--subset-size", subset_size, "decoded subset size");
  wbmv->add_option("--budget", budget, "decoder call cap");

  auto* lp = fit->add_subcommand("lp", "Chebyshev LP fit with Byzantine filter");
  int lp_total_d = 0, lp_nx = 2, lp_ny = 2, lp_grid = 0;
  double lp_delta = 0.05, lp_rho = 0.8;
  std::optional<double> lp_halfwidth;
  std::optional<size_t> lp_target;
  std::string lp_center = "median", lp_degrees;
  bool lp_no_filter = false;
  lp->add_option("--data", data_path, "input CSV")->required();
  lp->add_option("--out", report_path, "output report path");
  lp->add_option("--d", lp_total_d, "total degree (filter config)");
  lp->add_option("--degrees", lp_degrees, "per-axis Chebyshev caps n,m");
  lp->add_option("--grid", lp_grid, "bound-grid points per axis");
  lp->add_option("--delta", lp_delta, "noise half-width");
  lp->add_option("--rho", lp_rho, "clean fraction");
  lp->add_option("--halfwidth", lp_halfwidth, "filter square half-width");
  lp->add_option("--target", lp_target, "filter target count");
  lp->add_option("--center", lp_center, "median|mean");
  lp->add_flag("--no-filter", lp_no_filter, "skip the Byzantine filter");

  // filter
  auto* filter = app.add_subcommand("filter", "square-interval Byzantine filter");
  std::string filter_out = "filtered.csv";
  int flt_d = 4;
  double flt_delta = 0.05, flt_rho = 0.8;
  std::optional<double> flt_halfwidth;
  std::optional<size_t> flt_target;
  std::string flt_center = "median";
  filter->add_option("--data", data_path, "input CSV")->required();
  filter->add_option("--d", flt_d, "total degree");
  filter->add_option("--delta", flt_delta, "noise half-width")->required();
  filter->add_option("--rho", flt_rho, "clean fraction");
  filter->add_option("--halfwidth", flt_halfwidth, "square half-width");
  filter->add_option("--target", flt_target, "target kept count");
  filter->add_option("--center", flt_center, "median|mean");
  filter->add_option("--out", filter_out, "output CSV");

  // aggregate
  auto* agg = app.add_subcommand("aggregate", "local fits merged hierarchically");
  int agg_cells = 4, agg_d = 1, agg_t = 0, agg_grid = 0;
  size_t agg_resample = 64;
  std::string agg_fitter = "lp", agg_degrees;
  agg->add_option("--data", data_path, "input CSV")->required();
  agg->add_option("--cells", agg_cells, "total cell count");
  agg->add_option("--fitter", agg_fitter, "lp|wb");
  agg->add_option("--d", agg_d, "WB degree");
  agg->add_option("--t", agg_t, "WB corruption bound");
  agg->add_option("--degrees", agg_degrees, "per-axis Chebyshev caps n,m");
  agg->add_option("--grid", agg_grid, "LP bound-grid per axis");
  agg->add_option("--resample", agg_resample, "points per child at merge nodes");
  agg->add_option("--out", report_path, "output report path");

  // eval
  auto* ev = app.add_subcommand("eval", "evaluate a model at a point");
  std::string model_path, at_spec;
  ev->add_option("--model", model_path, "model or report JSON")->required();
  ev->add_option("--at", at_spec, "comma-separated coordinates")->required();

  // verify
  auto* verify = app.add_subcommand("verify", "independently re-check a report");
  std::string verify_report, verify_truth;
  std::optional<double> verify_rho, verify_delta;
  verify->add_option("--report", verify_report, "report JSON")->required();
  verify->add_option("--data", data_path, "dataset CSV")->required();
  verify->add_option("--truth", verify_truth, "truth expression (optional)");
  verify->add_option("--rho", verify_rho, "override clean fraction");
  verify->add_option("--delta", verify_delta, "override noise half-width");

  CLI11_PARSE(app, argc, argv);
  if (seed_opt->count() > 0) g.seed = seed_flag;

  auto parse_degrees = [](const std::string& text, int& nx, int& ny) {
    if (text.empty()) return;
    auto comma = text.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("--degrees wants n,m");
    nx = std::stoi(text.substr(0, comma));
    ny = std::stoi(text.substr(comma + 1));
  };

  try {
    if (gen->parsed()) {
      return cmd_gen(g, truth_expr, field_name, modulus, n_points, noise_spec,
                     beta, corrupt_spec, box_spec, out_path);
    }
    if (fit->parsed()) {
      DataSet ds = read_dataset(data_path);
      nlohmann::json config{{"data", data_path}, {"seed", g.seed ? *g.seed : 0}};
      EnumerateOptions opts;
      opts.subset_size = subset_size;
      opts.budget = budget;
      opts.random_subset_seed = random_subset_seed;
      if (wb1d->parsed()) {
        config["cmd"] = "fit wb1d";
        config["d"] = fit_d;
        if (fit_t_opt) config["t"] = *fit_t_opt;
        if (fit_rho) config["rho"] = *fit_rho;
        config["delta"] = delta_w;
        return cmd_fit_wb1d(ds, fit_d, fit_t_opt, fit_rho, delta_w, opts,
                            std::move(config), report_path);
      }
      if (wbmv->parsed()) {
        config["cmd"] = "fit wbmv";
        config["d"] = fit_d;
        config["t"] = fit_t;
        config["delta"] = delta_w;
        if (fit_rho) config["rho"] = *fit_rho;
        return cmd_fit_wbmv(ds, fit_d, fit_t, fit_axis, delta_w, fit_rho, opts,
                            std::move(config), report_path);
      }
      int lp_nx2 = lp_nx, lp_ny2 = lp_ny;
      parse_degrees(lp_degrees, lp_nx2, lp_ny2);
      config["cmd"] = "fit lp";
      config["degrees"] = {lp_nx2, lp_ny2};
      config["delta"] = lp_delta;
      config["rho"] = lp_rho;
      config["grid"] =
          lp_grid > 0 ? lp_grid : default_grid_per_axis(lp_nx2 + lp_ny2);
      return cmd_fit_lp(ds, lp_total_d, lp_delta, lp_rho, lp_nx2, lp_ny2, lp_grid,
                        lp_halfwidth, lp_target, lp_center, lp_no_filter,
                        std::move(config), report_path);
    }
    if (filter->parsed()) {
      DataSet ds = read_dataset(data_path);
      return cmd_filter(ds, flt_d, flt_delta, flt_rho, flt_halfwidth, flt_target,
                        flt_center, filter_out);
    }
    if (agg->parsed()) {
      DataSet ds = read_dataset(data_path);
      int agg_nx = 2, agg_ny = 2;
      parse_degrees(agg_degrees, agg_nx, agg_ny);
      nlohmann::json config{{"cmd", "aggregate"},
                            {"fitter", agg_fitter},
                            {"resample", agg_resample},
                            {"data", data_path}};
      return cmd_aggregate(g, ds, agg_cells, agg_fitter, agg_d, agg_t, agg_nx,
                           agg_ny, agg_grid, agg_resample, std::move(config),
                           report_path);
    }
    if (ev->parsed()) return cmd_eval(model_path, at_spec);
    if (verify->parsed()) {
      return cmd_verify(verify_report, data_path, verify_truth, verify_rho,
                        verify_delta);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}
