#include "byzfit/json_io.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace byzfit {

std::string scalar_to_string(const Scalar& s) { return s.str(); }

Scalar scalar_from_string(const std::string& text, const Field& f) {
  if (text.empty()) throw std::invalid_argument("empty scalar literal");
  switch (f.kind) {
    case FieldKind::Float64: {
      size_t pos = 0;
      double v = std::stod(text, &pos);
      if (pos != text.size() && text[pos] == '/') {
        size_t dpos = 0;
        double den = std::stod(text.substr(pos + 1), &dpos);
        if (pos + 1 + dpos != text.size() || den == 0.0)
          throw std::invalid_argument("bad float literal: " + text);
        return Scalar::f64(v / den);
      }
      if (pos != text.size()) throw std::invalid_argument("bad float literal: " + text);
      return Scalar::f64(v);
    }
    case FieldKind::PrimeField: {
      // Accept negative integers as symmetric representatives.
      long long v = std::stoll(text);
      return Scalar::from_int(static_cast<long>(v), f);
    }
    case FieldKind::Rational: {
      auto slash = text.find('/');
      mpq_class v;
      if (v.set_str(text, 10) != 0) {
        // mpq set_str handles "a/b"; retry decimals like "0.25" by hand.
        auto dot = text.find('.');
        if (slash == std::string::npos && dot != std::string::npos) {
          std::string digits = text.substr(0, dot) + text.substr(dot + 1);
          size_t frac_len = text.size() - dot - 1;
          mpz_class num(digits, 10), den(1);
          for (size_t i = 0; i < frac_len; ++i) den *= 10;
          v = mpq_class(num, den);
        } else {
          throw std::invalid_argument("bad rational literal: " + text);
        }
      }
      v.canonicalize();
      return Scalar::rational(v);
    }
  }
  throw std::logic_error("bad field kind");
}

namespace {

nlohmann::json coeff_to_json(const Scalar& c) {
  switch (c.kind()) {
    case FieldKind::Rational: return c.str();
    case FieldKind::PrimeField: return c.residue();
    case FieldKind::Float64: return c.dbl();
  }
  throw std::logic_error("bad field kind");
}

Scalar coeff_from_json(const nlohmann::json& j, const Field& f) {
  if (j.is_string()) return scalar_from_string(j.get<std::string>(), f);
  if (f.kind == FieldKind::Float64) return Scalar::f64(j.get<double>());
  if (f.kind == FieldKind::PrimeField)
    return Scalar::from_int(j.get<long>(), f);
  return Scalar::rational(j.get<long>());
}

Field field_from_json(const nlohmann::json& j) {
  std::string name = j.at("field").get<std::string>();
  if (name == "rational") return Field::rational();
  if (name == "float") return Field::f64();
  if (name == "gf") return Field::gf(j.at("modulus").get<uint64_t>());
  throw std::invalid_argument("unknown field kind: " + name);
}

}  // namespace

nlohmann::json poly_to_json(const MultiPoly& p) {
  nlohmann::json j;
  j["vars"] = p.vars();
  j["field"] = p.field().name();
  if (p.field().kind == FieldKind::PrimeField) j["modulus"] = p.field().modulus;
  j["basis"] = "monomial";
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [e, c] : p.terms()) {  // map iterates in GradedLex order
    terms.push_back({{"exp", e}, {"coeff", coeff_to_json(c)}});
  }
  j["terms"] = std::move(terms);
  return j;
}

MultiPoly poly_from_json(const nlohmann::json& j) {
  Field f = field_from_json(j);
  int vars = j.at("vars").get<int>();
  MultiPoly p(vars, f);
  for (const auto& term : j.at("terms")) {
    Exponents e = term.at("exp").get<Exponents>();
    p.add_term(e, coeff_from_json(term.at("coeff"), f));
  }
  return p;
}

nlohmann::json cheb_to_json(const ChebModel& m) {
  nlohmann::json j;
  j["basis"] = "chebyshev";
  j["degrees"] = m.degrees;
  j["delta"] = m.delta_achieved;
  // Nested arrays, outermost = axis 0.
  if (m.degrees.size() == 2) {
    nlohmann::json grid = nlohmann::json::array();
    for (int i = 0; i <= m.degrees[0]; ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (int jj = 0; jj <= m.degrees[1]; ++jj) {
        const int idx[2] = {i, jj};
        row.push_back(m.coeff(std::span<const int>(idx, 2)));
      }
      grid.push_back(std::move(row));
    }
    j["coeffs"] = std::move(grid);
  } else {
    j["coeffs_flat"] = m.coeffs;
  }
  return j;
}

ChebModel cheb_from_json(const nlohmann::json& j) {
  if (j.at("basis").get<std::string>() != "chebyshev")
    throw std::invalid_argument("not a chebyshev model");
  ChebModel m;
  m.degrees = j.at("degrees").get<std::vector<int>>();
  m.vars = static_cast<int>(m.degrees.size());
  m.delta_achieved = j.value("delta", 0.0);
  if (j.contains("coeffs")) {
    m.coeffs.reserve(m.coeff_count());
    for (const auto& row : j.at("coeffs")) {
      for (const auto& v : row) m.coeffs.push_back(v.get<double>());
    }
  } else {
    m.coeffs = j.at("coeffs_flat").get<std::vector<double>>();
  }
  if (m.coeffs.size() != m.coeff_count())
    throw std::invalid_argument("chebyshev coefficient grid size mismatch");
  return m;
}

double residual_abs(const Scalar& y, const Scalar& model_value) {
  Scalar diff = y - model_value;
  if (diff.kind() == FieldKind::PrimeField)
    return std::fabs(static_cast<double>(diff.symmetric_lift()));
  return std::fabs(diff.to_double());
}

void fill_poly_residuals(FitReport& rep, const DataSet& ds) {
  if (!rep.poly || ds.size() == 0) return;
  double mx = 0.0, sum = 0.0;
  for (size_t i = 0; i < ds.size(); ++i) {
    double r = residual_abs(ds.zs[i], rep.poly->eval(ds.xs[i]));
    mx = std::max(mx, r);
    sum += r;
  }
  rep.residual_max = mx;
  rep.residual_mean = sum / static_cast<double>(ds.size());
}

nlohmann::json report_to_json(const FitReport& r) {
  nlohmann::json j;
  if (r.poly) j["model"] = poly_to_json(*r.poly);
  if (r.cheb) j["model"] = cheb_to_json(*r.cheb);
  if (r.locator) j["locator"] = poly_to_json(*r.locator);
  if (r.q) j["q"] = poly_to_json(*r.q);
  j["flagged"] = r.flagged;
  if (!r.noise_vector.empty()) {
    nlohmann::json nv = nlohmann::json::array();
    for (const Scalar& s : r.noise_vector) nv.push_back(coeff_to_json(s));
    j["noise_vector"] = std::move(nv);
  }
  j["fitted_degree"] = r.fitted_degree;
  j["delta_achieved"] = r.delta_achieved;
  j["residuals"] = {{"max", r.residual_max}, {"mean", r.residual_mean}};
  if (r.sup_vs_truth) j["sup_vs_truth"] = *r.sup_vs_truth;
  j["counters"] = {{"wb_calls", r.wb_calls},
                   {"lp_rows", r.lp_rows},
                   {"pivots", r.pivots}};
  if (r.filtered_size >= 0) j["filtered_size"] = r.filtered_size;
  j["elapsed_ms"] = r.elapsed_ms;
  if (!r.config.is_null()) j["config"] = r.config;
  if (!r.notes.empty()) j["notes"] = r.notes;
  return j;
}

FitReport report_from_json(const nlohmann::json& j) {
  FitReport r;
  if (j.contains("model")) {
    const auto& m = j.at("model");
    if (m.value("basis", "") == "chebyshev") {
      r.cheb = cheb_from_json(m);
    } else {
      r.poly = poly_from_json(m);
    }
  }
  if (j.contains("locator")) r.locator = poly_from_json(j.at("locator"));
  if (j.contains("q")) r.q = poly_from_json(j.at("q"));
  r.flagged = j.value("flagged", std::vector<size_t>{});
  if (j.contains("noise_vector") && j.contains("locator")) {
    Field f = r.locator->field();
    for (const auto& v : j.at("noise_vector")) {
      r.noise_vector.push_back(coeff_from_json(v, f));
    }
  }
  r.fitted_degree = j.value("fitted_degree", -1);
  r.delta_achieved = j.value("delta_achieved", 0.0);
  if (j.contains("residuals")) {
    r.residual_max = j.at("residuals").value("max", 0.0);
    r.residual_mean = j.at("residuals").value("mean", 0.0);
  }
  if (j.contains("sup_vs_truth")) r.sup_vs_truth = j.at("sup_vs_truth").get<double>();
  if (j.contains("counters")) {
    r.wb_calls = j.at("counters").value("wb_calls", uint64_t{0});
    r.lp_rows = j.at("counters").value("lp_rows", uint64_t{0});
    r.pivots = j.at("counters").value("pivots", uint64_t{0});
  }
  r.filtered_size = j.value("filtered_size", int64_t{-1});
  r.elapsed_ms = j.value("elapsed_ms", 0.0);
  if (j.contains("config")) r.config = j.at("config");
  r.notes = j.value("notes", "");
  return r;
}

void write_file_atomic(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  fs::path target(path);
  fs::path dir = target.parent_path();
  if (dir.empty()) dir = ".";
  fs::path tmp = dir / (target.filename().string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << contents;
    if (!out.good()) throw std::runtime_error("write failed: " + tmp.string());
  }
  fs::rename(tmp, target);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

}  // namespace byzfit
