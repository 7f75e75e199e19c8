// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Criteria that need the CLI run the built binary; everything else
// drives the library directly. Run from anywhere; artifacts land in a
// temporary directory.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "byzfit/aggregate.hpp"
#include "byzfit/chebyshev.hpp"
#include "byzfit/generator.hpp"
#include "byzfit/json_io.hpp"
#include "byzfit/lpfit.hpp"
#include "byzfit/mvwb.hpp"
#include "byzfit/poly_expr.hpp"
#include "byzfit/rng.hpp"
#include "byzfit/wb.hpp"
#include "regression_constants.hpp"

using namespace byzfit;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;
fs::path g_tmp;

void criterion(const std::string& name, const std::function<bool(std::string&)>& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  std::string detail;
  bool ok = false;
  try {
    ok = fn(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  double ms = std::chrono::duration<double, std::milli>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
  std::printf("[%s] %-36s %9.1f ms%s%s\n", ok ? "PASS" : "FAIL", name.c_str(),
              ms, detail.empty() ? "" : "  ", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

int run_cli(const std::string& args, std::string* output = nullptr) {
  fs::path out_file = g_tmp / "cli_output.txt";
  std::string cmd = std::string(BYZFIT_BIN) + " " + args + " > " +
                    out_file.string() + " 2>&1";
  int status = std::system(cmd.c_str());
  if (output) *output = read_file(out_file.string());
  if (status == -1) return -1;
  return WEXITSTATUS(status);
}

std::string fixture(const std::string& name) {
  return std::string(BYZFIT_FIXTURES) + "/" + name;
}
std::string golden(const std::string& name) {
  return std::string(BYZFIT_GOLDEN) + "/" + name;
}

MultiPoly expect_poly(const std::string& expr, int vars) {
  return parse_poly(expr, Field::rational(), vars);
}

// Degree-4 generator used by the LP criteria: tensor Chebyshev coefficients
// over per-axis caps (2,2) with sum |c| <= 0.95, so sup|f| <= 0.95 <= 1.
ChebModel lp_generator(uint64_t seed) {
  Rng rng(seed);
  ChebModel gen = ChebModel::bivariate(2, 2);
  double total = 0.0;
  for (double& c : gen.coeffs) {
    c = rng.uniform(-1, 1);
    total += std::fabs(c);
  }
  for (double& c : gen.coeffs) c *= 0.95 / total;
  return gen;
}

DataSet sample_cheb(const ChebModel& gen, size_t n, double delta, uint64_t seed) {
  Rng rng(seed + 1);
  DataSet ds;
  ds.k = 2;
  ds.field = Field::f64();
  for (size_t i = 0; i < n; ++i) {
    double x = rng.uniform(-1, 1), y = rng.uniform(-1, 1);
    double z = gen.at(x, y) + rng.uniform(-delta, delta);
    ds.xs.push_back({Scalar::f64(x), Scalar::f64(y)});
    ds.zs.push_back(Scalar::f64(z));
  }
  return ds;
}

double sup_model_vs_cheb(const ChebModel& model, const ChebModel& gen) {
  double sup = 0.0;
  for (int i = 0; i <= 100; ++i) {
    for (int j = 0; j <= 100; ++j) {
      double x = -1 + 0.02 * i, y = -1 + 0.02 * j;
      sup = std::max(sup, std::fabs(model.at(x, y) - gen.at(x, y)));
    }
  }
  return sup;
}

bool audit_model(const ChebModel& model, int grid_per_axis, std::string& detail,
                 double* max_grid_excess, double* max_deriv_ratio) {
  double sup = sup_on_grid(model, 10 * grid_per_axis);
  int n = model.degrees[0], m = model.degrees[1];
  double structure = std::pow(n, 3) * m + std::pow(m, 3) * n;
  double bound = 1.0 + regression::kGridBoundK * structure /
                           static_cast<double>(grid_per_axis);
  double excess = (sup - 1.0) * grid_per_axis / std::max(structure, 1.0);
  if (max_grid_excess) *max_grid_excess = std::max(*max_grid_excess, excess);
  if (sup > bound) {
    detail = "grid audit sup=" + std::to_string(sup) + " > " + std::to_string(bound);
    return false;
  }
  DerivativeAudit da = derivative_bound_audit(model);
  if (max_deriv_ratio) *max_deriv_ratio = std::max(*max_deriv_ratio, da.ratio);
  if (da.ratio > regression::kDerivativeRatioBound) {
    detail = "derivative ratio " + std::to_string(da.ratio);
    return false;
  }
  return true;
}

// Models solved by criteria 7 and 9, audited again by criterion 8.
std::vector<ChebModel> g_shipped_models;
bool g_calibrate = false;

// ------------------------------------------------------------------------

bool c1_example1(std::string& detail) {
  fs::path report = g_tmp / "ex1_report.json";
  int rc = run_cli("fit wbmv --data " + fixture("example1.csv") +
                   " --d 1 --t 1 --out " + report.string());
  if (rc != 0) {
    detail = "CLI exit " + std::to_string(rc);
    return false;
  }
  FitReport rep = report_from_json(nlohmann::json::parse(read_file(report.string())));
  if (!rep.poly || !rep.locator || !rep.q) {
    detail = "missing model/locator/q";
    return false;
  }
  bool ok = *rep.poly == expect_poly("x+y", 2) &&
            *rep.locator == expect_poly("x-8", 2) &&
            *rep.q == expect_poly("x^2+x*y-8*x-8*y", 2) &&
            rep.flagged == std::vector<size_t>{4} &&
            rep.poly->field().kind == FieldKind::Rational;
  if (!ok) {
    detail = "wrong decode output";
    return false;
  }
  if (rep.elapsed_ms >= 100.0) {
    detail = "solve took " + std::to_string(rep.elapsed_ms) + " ms";
    return false;
  }
  return true;
}

bool c2_appendix(std::string& detail) {
  DataSet ds = read_dataset(fixture("appendix.csv"));
  MVProblem prob;
  prob.xs = ds.xs;
  prob.zs = ds.zs;
  prob.vars = 2;
  prob.degree = 1;
  prob.t = 2;
  const auto t0 = std::chrono::steady_clock::now();
  auto res = mv_wb_decode(prob);
  double ms = std::chrono::duration<double, std::milli>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
  if (!res.ok()) {
    detail = res.failure().detail;
    return false;
  }
  if (ms >= 100.0) {
    detail = "decode took " + std::to_string(ms) + " ms";
    return false;
  }
  if (res.value().error_locator != expect_poly("x^2+x-2", 2) ||
      res.value().poly != expect_poly("x+y", 2) ||
      res.value().flagged != std::vector<size_t>{0, 1}) {
    detail = "wrong decode output";
    return false;
  }
  // bivariate-locator identity, verified by multiplication
  MultiPoly e2 = expect_poly("x + 3/4*y - 5/2", 2);
  MultiPoly q2 = expect_poly("x^2 + 7/4*x*y - 5/2*x + 3/4*y^2 - 5/2*y", 2);
  return e2 * expect_poly("x+y", 2) == q2;
}

bool c3_sample_counts(std::string& detail) {
  if (required_sample_size(1, 2, 1) != 7) {
    detail = "N(1,2,1) != 7";
    return false;
  }
  if (required_sample_size(1, 2, 2) != 12) {
    detail = "N(1,2,2) != 12";
    return false;
  }
  return true;
}

bool c4_wb_recovery(std::string& detail) {
  const Field F = Field::gf(101);
  Rng rng(40404);
  const auto t0 = std::chrono::steady_clock::now();
  for (int trial = 0; trial < 1000; ++trial) {
    int d = static_cast<int>(rng.below(6));
    int t = static_cast<int>(rng.below(4));
    int n = 2 * t + d + 1;
    MultiPoly p(1, F);
    for (int i = 0; i <= d; ++i) {
      p.add_term({static_cast<uint32_t>(i)},
                 Scalar::from_int(rng.integer(0, 100), F));
    }
    WBProblem prob;
    prob.degree_bound = d;
    prob.error_bound = t;
    std::vector<size_t> victims = rng.sample(n, t);
    for (int i = 0; i < n; ++i) {
      Scalar x = Scalar::from_int(i, F);
      std::vector<Scalar> at{x};
      Scalar y = p.eval(at);
      if (std::find(victims.begin(), victims.end(), i) != victims.end()) {
        y = y + Scalar::from_int(rng.integer(1, 100), F);
      }
      prob.points.emplace_back(x, y);
    }
    auto res = wb_decode(prob);
    if (!res.ok() || res.value().poly != p) {
      detail = "trial " + std::to_string(trial) + " failed";
      return false;
    }
  }
  double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                 .count();
  if (s >= 10.0) {
    detail = "took " + std::to_string(s) + " s";
    return false;
  }
  detail = "1000/1000";
  return true;
}

bool c5_mv_recovery(std::string& detail) {
  const Field F = Field::gf(10007);
  Rng rng(50505);
  const auto t0 = std::chrono::steady_clock::now();
  for (int trial = 0; trial < 200; ++trial) {
    int m = 2 + static_cast<int>(rng.below(2));
    int d = static_cast<int>(rng.below(4));
    int t = static_cast<int>(rng.below(3));
    size_t n = required_sample_size(d, m, t);
    MultiPoly p(m, F);
    for (const auto& mono : enumerate_monomials(m, d)) {
      p.add_term(mono, Scalar::from_int(rng.integer(0, 10006), F));
    }
    MVProblem prob;
    prob.vars = m;
    prob.degree = d;
    prob.t = t;
    std::vector<size_t> victims = rng.sample(n, t);
    for (size_t i = 0; i < n; ++i) {
      std::vector<Scalar> x{Scalar::from_int(static_cast<long>(i), F)};
      for (int a = 1; a < m; ++a) {
        x.push_back(Scalar::from_int(rng.integer(0, 10006), F));
      }
      Scalar z = p.eval(x);
      if (std::find(victims.begin(), victims.end(), i) != victims.end()) {
        z = z + Scalar::from_int(rng.integer(1, 10006), F);
      }
      prob.xs.push_back(std::move(x));
      prob.zs.push_back(z);
    }
    auto res = mv_wb_decode(prob);
    if (!res.ok() || res.value().poly != p) {
      detail = "trial " + std::to_string(trial) + " failed";
      return false;
    }
  }
  double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                 .count();
  if (s >= 60.0) {
    detail = "took " + std::to_string(s) + " s";
    return false;
  }
  detail = "200/200";
  return true;
}

bool c6_noise_enumeration(std::string& detail) {
  const Field F = Field::gf(11);
  for (uint64_t seed = 1; seed <= 50; ++seed) {
    Rng rng(seed * 7919);
    long a = rng.integer(0, 10), b = rng.integer(0, 10);
    MultiPoly p(1, F);
    p.add_term({1}, Scalar::from_int(a, F));
    p.add_term({0}, Scalar::from_int(b, F));

    // 12 points; decoded subset is the first 6. The held-out half carries
    // at least two +1 and two -1 noise offsets on non-Byzantine rows, which
    // rules out the shifted candidates p(+-)1 reachable by earlier noise
    // vectors. One Byzantine row, anywhere.
    size_t byz = rng.below(12);
    std::vector<long> noise(12);
    for (auto& v : noise) v = rng.integer(-1, 1);
    std::vector<size_t> held_clean;
    for (size_t i = 6; i < 12; ++i) {
      if (i != byz) held_clean.push_back(i);
    }
    rng.shuffle(held_clean);
    noise[held_clean[0]] = 1;
    noise[held_clean[1]] = 1;
    noise[held_clean[2]] = -1;
    noise[held_clean[3]] = -1;

    DataSet S;
    S.k = 1;
    S.field = F;
    for (size_t i = 0; i < 12; ++i) {
      Scalar x = Scalar::from_int(static_cast<long>(i % 11), F);
      std::vector<Scalar> at{x};
      Scalar y = p.eval(at) + Scalar::from_int(noise[i], F);
      if (i == byz) {
        y = p.eval(at) + Scalar::from_int(2 + static_cast<long>(rng.below(4)), F);
      }
      S.xs.push_back({x});
      S.zs.push_back(y);
    }
    EnumerateOptions opts;
    opts.subset_size = 6;
    auto res = noise_enumerate_fit(S, 11.0 / 12.0, 1,
                                   NoiseAlphabet::integer_band(1, F), opts);
    if (!res.ok()) {
      detail = "seed " + std::to_string(seed) + ": " + fail_name(res.code());
      return false;
    }
    if (*res.value().poly != p) {
      detail = "seed " + std::to_string(seed) + ": wrong polynomial";
      return false;
    }
  }
  detail = "50/50";
  return true;
}

bool c7_lp_feasibility(std::string& detail) {
  const double delta = 0.05;
  const size_t n = sample_size(4, delta);  // 1403
  const int grid = default_grid_per_axis(4);
  double worst_ratio = 0.0;
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    const auto t0 = std::chrono::steady_clock::now();
    ChebModel gen = lp_generator(seed * 101);
    DataSet S = sample_cheb(gen, n, delta, seed * 101);
    LPInstance inst = build_lp(S, 2, 2, grid);
    auto res = solve_lp(inst);
    if (!res.ok()) {
      detail = "seed " + std::to_string(seed) + ": " + fail_name(res.code());
      return false;
    }
    double s = std::chrono::duration<double>(
                   std::chrono::steady_clock::now() - t0)
                   .count();
    if (s >= 30.0) {
      detail = "seed " + std::to_string(seed) + " took " + std::to_string(s) + " s";
      return false;
    }
    if (res.value().delta_achieved > delta + 1e-6) {
      detail = "seed " + std::to_string(seed) + ": delta_achieved " +
               std::to_string(res.value().delta_achieved);
      return false;
    }
    double ratio = sup_model_vs_cheb(res.value(), gen) / delta;
    worst_ratio = std::max(worst_ratio, ratio);
    g_shipped_models.push_back(res.value());
  }
  if (g_calibrate) {
    std::printf("    [calibration] c7 max sup/delta ratio = %.4f\n", worst_ratio);
  }
  if (worst_ratio > regression::kSupErrorPerDelta_d4) {
    detail = "sup error ratio " + std::to_string(worst_ratio) + " > frozen " +
             std::to_string(regression::kSupErrorPerDelta_d4);
    return false;
  }
  detail = "max sup/delta = " + std::to_string(worst_ratio);
  return true;
}

bool c8_claim_audits(std::string& detail) {
  // Markov extremal case: T_4(x) attains the ratio bound exactly.
  ChebModel markov;
  markov.vars = 2;
  markov.degrees = {4, 0};
  markov.coeffs.assign(5, 0.0);
  markov.coeffs[4] = 1.0;
  DerivativeAudit da = derivative_bound_audit(markov);
  if (std::fabs(da.ratio - 1.0) > 1e-6) {
    detail = "Markov case ratio " + std::to_string(da.ratio);
    return false;
  }
  if (g_shipped_models.empty()) {
    detail = "no shipped models (criterion 7 did not run)";
    return false;
  }
  double max_excess = 0.0, max_ratio = 0.0;
  for (const ChebModel& m : g_shipped_models) {
    std::string audit_detail;
    if (!audit_model(m, default_grid_per_axis(4), audit_detail, &max_excess,
                     &max_ratio)) {
      detail = audit_detail;
      return false;
    }
  }
  if (g_calibrate) {
    std::printf(
        "    [calibration] c8 max grid excess K = %.6f, max deriv ratio = %.4f\n",
        max_excess, max_ratio);
  }
  std::ostringstream os;
  os << g_shipped_models.size() << " models audited";
  detail = os.str();
  return true;
}

bool c9_byzantine_elimination(std::string& detail) {
  const double delta = 0.05;
  // degree-4 truth with a small gradient so values are essentially constant
  // over each filter square
  ChebModel truth = ChebModel::bivariate(2, 2);
  auto set = [&](int i, int j, double v) {
    const int idx[2] = {i, j};
    truth.coeffs[truth.flat_index(std::span<const int>(idx, 2))] = v;
  };
  set(0, 0, 0.1);
  set(1, 0, 0.1);
  set(0, 1, -0.08);
  set(1, 1, 0.15);
  set(2, 2, 0.03);
  MultiPoly truth_poly = cheb_to_monomial(truth);

  FilterConfig cfg;
  cfg.d = 4;
  cfg.delta = delta;
  cfg.rho_clean = 0.8;
  cfg.square_halfwidth = 0.015;

  double worst_ratio = 0.0;
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    Generator gen(truth_poly);
    gen.noise = NoiseKind::UniformBand;
    gen.noise_delta = delta;
    gen.beta = 0.2;
    gen.corrupt = CorruptKind::Adversarial;
    gen.seed = seed * 313;
    DataSet S = generate(gen, 150000);
    auto filtered = byzantine_filter(S, cfg);
    if (!filtered.ok()) {
      detail = "seed " + std::to_string(seed) + ": " + fail_name(filtered.code());
      return false;
    }
    for (size_t i = 0; i < filtered.value().size(); ++i) {
      if (filtered.value().labels[i] == Label::Corrupt) {
        detail = "seed " + std::to_string(seed) + ": corrupt point kept (row " +
                 std::to_string(filtered.value().origin[i]) + ")";
        return false;
      }
    }
    auto robust = fit_robust(S, cfg, 2, 2, default_grid_per_axis(4), &truth_poly);
    if (!robust.ok()) {
      detail = "seed " + std::to_string(seed) + ": fit_robust " +
               fail_name(robust.code());
      return false;
    }
    double ratio = *robust.value().sup_vs_truth / delta;
    worst_ratio = std::max(worst_ratio, ratio);
    g_shipped_models.push_back(*robust.value().cheb);
  }
  if (g_calibrate) {
    std::printf("    [calibration] c9 max sup/delta ratio = %.4f\n", worst_ratio);
  }
  if (worst_ratio > regression::kSupErrorPerDelta_d4) {
    detail = "sup error ratio " + std::to_string(worst_ratio);
    return false;
  }
  detail = "max sup/delta = " + std::to_string(worst_ratio);
  return true;
}

bool c10_scaling(std::string& detail) {
  const Field F = Field::gf(1000003);
  struct Config {
    int n, d;
  };
  // d chosen so the unknown count roughly tracks N
  const Config configs[] = {{50, 7}, {100, 11}, {200, 17}};
  double times[3];
  Rng rng(606060);
  for (int ci = 0; ci < 3; ++ci) {
    const auto& cfgc = configs[ci];
    MVProblem prob;
    prob.vars = 2;
    prob.degree = cfgc.d;
    prob.t = 1;
    MultiPoly p(2, F);
    for (const auto& mono : enumerate_monomials(2, cfgc.d)) {
      p.add_term(mono, Scalar::from_int(rng.integer(0, 1000002), F));
    }
    for (int i = 0; i < cfgc.n; ++i) {
      std::vector<Scalar> x{Scalar::from_int(i, F),
                            Scalar::from_int(rng.integer(0, 1000002), F)};
      Scalar z = p.eval(x);
      if (i == 3) z = z + Scalar::from_int(17, F);
      prob.xs.push_back(std::move(x));
      prob.zs.push_back(z);
    }
    // repeat until the accumulated time is stable enough to compare
    int reps = 0;
    const auto t0 = std::chrono::steady_clock::now();
    double elapsed = 0.0;
    while (elapsed < 0.2 && reps < 200) {
      auto res = mv_wb_decode(prob);
      if (!res.ok() || res.value().poly != p) {
        detail = "decode failed at N=" + std::to_string(cfgc.n);
        return false;
      }
      ++reps;
      elapsed = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
    }
    times[ci] = elapsed / reps;
  }
  double r1 = times[1] / times[0];
  double r2 = times[2] / times[1];
  std::ostringstream os;
  os << "ratios " << r1 << ", " << r2;
  detail = os.str();
  return r1 <= 9.0 && r2 <= 9.0;
}

bool c11_verify_oracle(std::string& detail) {
  struct GoldenCase {
    const char* report;
    const char* data;
  };
  const GoldenCase cases[] = {
      {"example1_report.json", "example1.csv"},
      {"wb1d_gf_report.json", "wb1d_gf.csv"},
      {"lp_noisy_report.json", "lp_noisy.csv"},
  };
  for (const auto& gc : cases) {
    std::string out;
    int rc = run_cli("verify --report " + golden(gc.report) + " --data " +
                         fixture(gc.data),
                     &out);
    if (rc != 0) {
      detail = std::string(gc.report) + ": verify exit " + std::to_string(rc) +
               " (" + out + ")";
      return false;
    }
    if (out.find("PASS") == std::string::npos) {
      detail = std::string(gc.report) + ": no PASS verdict";
      return false;
    }
  }

  // three tampered mutants, each of which must FAIL
  int mutant_id = 0;
  for (const auto& gc : cases) {
    nlohmann::json rj = nlohmann::json::parse(read_file(golden(gc.report)));
    nlohmann::json& model = rj["model"];
    if (model.value("basis", "monomial") == "chebyshev") {
      model["coeffs"][0][0] = model["coeffs"][0][0].get<double>() + 0.5;
    } else {
      nlohmann::json& coeff = model["terms"][0]["coeff"];
      if (coeff.is_string() || model["field"] == "rational") {
        Field f = Field::rational();
        std::string text = coeff.is_string() ? coeff.get<std::string>()
                                             : std::to_string(coeff.get<long>());
        Scalar c = scalar_from_string(text, f) + Scalar::rational(1, 2);
        coeff = c.str();
      } else {
        coeff = coeff.get<long>() + 1;  // gf residue bump
      }
    }
    fs::path mutant = g_tmp / ("mutant" + std::to_string(mutant_id++) + ".json");
    write_file_atomic(mutant.string(), rj.dump(2));
    std::string out;
    int rc = run_cli("verify --report " + mutant.string() + " --data " +
                         fixture(gc.data),
                     &out);
    if (rc == 0 || out.find("FAIL") == std::string::npos) {
      detail = std::string(gc.report) + " mutant: verify did not FAIL";
      return false;
    }
  }
  detail = "3 golden PASS, 3 mutants FAIL";
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    if (std::string(argv[i]) == "--calibrate") g_calibrate = true;
  }
  g_tmp = fs::temp_directory_path() / "byzfit_acceptance";
  fs::create_directories(g_tmp);

  criterion("C1 worked-instance reproduction", c1_example1);
  criterion("C2 twelve-point reproduction", c2_appendix);
  criterion("C3 sample-count formulas", c3_sample_counts);
  criterion("C4 WB recovery x1000", c4_wb_recovery);
  criterion("C5 multivariate recovery x200", c5_mv_recovery);
  criterion("C6 discrete-noise enumeration x50", c6_noise_enumeration);
  criterion("C7 LP feasibility x20", c7_lp_feasibility);
  criterion("C9 Byzantine elimination x20", c9_byzantine_elimination);
  // C8 audits every model the two criteria above solved, so it runs last.
  criterion("C8 bound audits", c8_claim_audits);
  criterion("C10 solve-cost scaling", c10_scaling);
  criterion("C11 independent verification", c11_verify_oracle);

  if (g_failures == 0) {
    std::printf("acceptance: all criteria passed\n");
    return 0;
  }
  std::printf("acceptance: %d criteria FAILED\n", g_failures);
  return 1;
}
