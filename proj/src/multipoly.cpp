#include "byzfit/multipoly.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace byzfit {

bool GradedLexLess::operator()(const Exponents& a, const Exponents& b) const {
  uint64_t da = std::accumulate(a.begin(), a.end(), uint64_t{0});
  uint64_t db = std::accumulate(b.begin(), b.end(), uint64_t{0});
  if (da != db) return da < db;
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

uint64_t count_monomials(int d, int m) {
  if (d < 0 || m < 1) throw std::invalid_argument("count_monomials: d >= 0, m >= 1");
  // C(d+m, m) built incrementally; each partial product stays integral.
  uint64_t result = 1;
  for (int i = 1; i <= m; ++i) {
    uint64_t num = static_cast<uint64_t>(d) + static_cast<uint64_t>(i);
    if (result > std::numeric_limits<uint64_t>::max() / num) {
      throw std::overflow_error("count_monomials overflow");
    }
    result = result * num / static_cast<uint64_t>(i);
  }
  return result;
}

namespace {

void enumerate_rec(int vars, int pos, int remaining, Exponents& cur,
                   std::vector<Exponents>& out) {
  if (pos == vars - 1) {
    cur[pos] = static_cast<uint32_t>(remaining);
    out.push_back(cur);
    return;
  }
  for (int e = 0; e <= remaining; ++e) {
    cur[pos] = static_cast<uint32_t>(e);
    enumerate_rec(vars, pos + 1, remaining - e, cur, out);
  }
}

}  // namespace

std::vector<Exponents> enumerate_monomials(int vars, int max_degree) {
  if (vars < 1 || max_degree < 0)
    throw std::invalid_argument("enumerate_monomials: vars >= 1, degree >= 0");
  std::vector<Exponents> out;
  out.reserve(count_monomials(max_degree, vars));
  Exponents cur(static_cast<size_t>(vars), 0);
  std::vector<Exponents> of_degree;
  for (int d = 0; d <= max_degree; ++d) {
    of_degree.clear();
    enumerate_rec(vars, 0, d, cur, of_degree);
    std::sort(of_degree.begin(), of_degree.end());
    out.insert(out.end(), of_degree.begin(), of_degree.end());
  }
  return out;
}

MultiPoly::MultiPoly(int vars, const Field& field) : vars_(vars), field_(field) {
  if (vars < 1) throw std::invalid_argument("MultiPoly needs vars >= 1");
}

MultiPoly MultiPoly::constant(int vars, const Scalar& c) {
  MultiPoly p(vars, c.field());
  p.add_term(Exponents(static_cast<size_t>(vars), 0), c);
  return p;
}

MultiPoly MultiPoly::monomial(int vars, Exponents exps, const Scalar& coeff) {
  if (exps.size() != static_cast<size_t>(vars))
    throw std::invalid_argument("monomial exponent vector length != vars");
  MultiPoly p(vars, coeff.field());
  p.add_term(std::move(exps), coeff);
  return p;
}

MultiPoly MultiPoly::variable(int vars, int axis, const Field& field) {
  if (axis < 0 || axis >= vars) throw std::invalid_argument("variable axis out of range");
  Exponents e(static_cast<size_t>(vars), 0);
  e[static_cast<size_t>(axis)] = 1;
  return monomial(vars, std::move(e), Scalar::one(field));
}

std::optional<int> MultiPoly::total_degree() const {
  std::optional<int> best;
  for (const auto& [e, c] : terms_) {
    int d = static_cast<int>(std::accumulate(e.begin(), e.end(), uint64_t{0}));
    if (!best || d > *best) best = d;
  }
  return best;
}

std::optional<int> MultiPoly::degree_in(int axis) const {
  if (axis < 0 || axis >= vars_) throw std::invalid_argument("axis out of range");
  std::optional<int> best;
  for (const auto& [e, c] : terms_) {
    int d = static_cast<int>(e[static_cast<size_t>(axis)]);
    if (!best || d > *best) best = d;
  }
  return best;
}

bool MultiPoly::univariate_in(int axis) const {
  for (const auto& [e, c] : terms_) {
    for (int j = 0; j < vars_; ++j) {
      if (j != axis && e[static_cast<size_t>(j)] != 0) return false;
    }
  }
  return true;
}

Scalar MultiPoly::coeff(const Exponents& e) const {
  auto it = terms_.find(e);
  if (it == terms_.end()) return Scalar::zero(field_);
  return it->second;
}

void MultiPoly::set_coeff(const Exponents& e, const Scalar& c) {
  if (e.size() != static_cast<size_t>(vars_))
    throw std::invalid_argument("exponent vector length != vars");
  if (c.field() != field_) throw std::invalid_argument("coefficient field mismatch");
  if (c.is_zero()) {
    terms_.erase(e);
  } else {
    terms_.insert_or_assign(e, c);
  }
}

void MultiPoly::add_term(const Exponents& e, const Scalar& c) {
  if (e.size() != static_cast<size_t>(vars_))
    throw std::invalid_argument("exponent vector length != vars");
  if (c.field() != field_) throw std::invalid_argument("coefficient field mismatch");
  if (c.is_zero()) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
    return;
  }
  Scalar s = it->second + c;
  if (s.is_zero()) {
    terms_.erase(it);
  } else {
    it->second = std::move(s);
  }
}

void MultiPoly::require_compatible(const MultiPoly& o) const {
  if (vars_ != o.vars_) throw std::invalid_argument("polynomial vars mismatch");
  if (field_ != o.field_) throw std::invalid_argument("polynomial field mismatch");
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r(vars_, field_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
  require_compatible(o);
  MultiPoly r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, c);
  return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const {
  require_compatible(o);
  MultiPoly r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
  return r;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
  require_compatible(o);
  MultiPoly r(vars_, field_);
  Exponents sum(static_cast<size_t>(vars_), 0);
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : o.terms_) {
      for (size_t i = 0; i < sum.size(); ++i) sum[i] = ea[i] + eb[i];
      r.add_term(sum, ca * cb);
    }
  }
  return r;
}

MultiPoly MultiPoly::scaled(const Scalar& c) const {
  if (c.field() != field_) throw std::invalid_argument("scaling field mismatch");
  MultiPoly r(vars_, field_);
  if (c.is_zero()) return r;
  for (const auto& [e, t] : terms_) r.terms_.emplace(e, t * c);
  return r;
}

bool MultiPoly::operator==(const MultiPoly& o) const {
  return vars_ == o.vars_ && field_ == o.field_ && terms_ == o.terms_;
}

Scalar MultiPoly::eval(std::span<const Scalar> point) const {
  if (point.size() != static_cast<size_t>(vars_))
    throw std::invalid_argument("eval point dimension mismatch");
  for (const Scalar& x : point) {
    if (x.field() != field_) throw std::invalid_argument("eval point field mismatch");
  }
  Scalar acc = Scalar::zero(field_);
  for (const auto& [e, c] : terms_) {
    Scalar term = c;
    for (size_t i = 0; i < point.size(); ++i) {
      if (e[i] != 0) term *= point[i].pow(e[i]);
    }
    acc += term;
  }
  return acc;
}

std::string MultiPoly::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  // Highest-degree terms first reads naturally.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    std::string cs = c.str();
    bool neg = !cs.empty() && cs[0] == '-';
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    if (neg) cs = cs.substr(1);
    std::string mono;
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += "x" + std::to_string(i + 1);
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    if (mono.empty()) {
      out += cs;
    } else if (cs == "1") {
      out += mono;
    } else {
      out += cs + "*" + mono;
    }
  }
  return out;
}

std::pair<MultiPoly, MultiPoly> divide_by_univariate(const MultiPoly& q,
                                                     const MultiPoly& e,
                                                     int axis) {
  if (q.vars() != e.vars() || q.field() != e.field())
    throw std::invalid_argument("divide_by_univariate: operand mismatch");
  if (!q.field().exact())
    throw std::invalid_argument("divide_by_univariate requires an exact field");
  if (e.is_zero()) throw std::invalid_argument("division by zero polynomial");
  if (!e.univariate_in(axis))
    throw std::invalid_argument("divisor is not univariate in the given axis");

  const int vars = q.vars();
  const int de = *e.degree_in(axis);
  Exponents lead(static_cast<size_t>(vars), 0);
  lead[static_cast<size_t>(axis)] = static_cast<uint32_t>(de);
  Scalar lc = e.coeff(lead);
  if (lc.is_zero()) throw std::invalid_argument("divisor has no invertible leading coefficient");
  Scalar lc_inv = lc.inverse();

  MultiPoly quotient(vars, q.field());
  MultiPoly rem = q;
  while (!rem.is_zero()) {
    int dr = *rem.degree_in(axis);
    if (dr < de) break;
    // Peel every term of axis-degree dr in one step; all of them shift down
    // together, so the axis degree of rem strictly decreases each pass.
    MultiPoly step(vars, q.field());
    for (const auto& [ex, c] : rem.terms()) {
      if (static_cast<int>(ex[static_cast<size_t>(axis)]) != dr) continue;
      Exponents shifted = ex;
      shifted[static_cast<size_t>(axis)] -= static_cast<uint32_t>(de);
      step.add_term(shifted, c * lc_inv);
    }
    quotient = quotient + step;
    rem = rem - step * e;
    if (!rem.is_zero() && *rem.degree_in(axis) >= dr) {
      throw std::logic_error("univariate division failed to reduce degree");
    }
  }
  return {std::move(quotient), std::move(rem)};
}

}  // namespace byzfit
