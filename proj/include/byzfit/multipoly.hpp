#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "byzfit/scalar.hpp"

namespace byzfit {

using Exponents = std::vector<uint32_t>;

// Canonical monomial order used everywhere a deterministic column or term
// order is needed: ascending total degree, ties broken by ascending
// lexicographic comparison of the exponent vector.
struct GradedLexLess {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

// C(d+m, d) with overflow detection (throws std::overflow_error).
uint64_t count_monomials(int d, int m);

// All exponent vectors in `vars` variables of total degree <= max_degree,
// in GradedLex order. Size equals count_monomials(max_degree, vars).
std::vector<Exponents> enumerate_monomials(int vars, int max_degree);

// Sparse multivariate polynomial over one computation field. Zero
// coefficients are never stored; the zero polynomial has an empty term map
// and an empty total_degree().
class MultiPoly {
 public:
  MultiPoly(int vars, const Field& field);

  static MultiPoly zero(int vars, const Field& field) { return MultiPoly(vars, field); }
  static MultiPoly constant(int vars, const Scalar& c);
  static MultiPoly monomial(int vars, Exponents exps, const Scalar& coeff);
  // x_axis as a polynomial (axis is 0-based).
  static MultiPoly variable(int vars, int axis, const Field& field);

  int vars() const { return vars_; }
  const Field& field() const { return field_; }
  bool is_zero() const { return terms_.empty(); }
  size_t term_count() const { return terms_.size(); }
  const std::map<Exponents, Scalar, GradedLexLess>& terms() const { return terms_; }

  // Empty optional for the zero polynomial (degree sentinel).
  std::optional<int> total_degree() const;
  std::optional<int> degree_in(int axis) const;
  // True when every term's exponents vanish outside `axis`.
  bool univariate_in(int axis) const;

  Scalar coeff(const Exponents& e) const;  // zero scalar if absent
  void set_coeff(const Exponents& e, const Scalar& c);
  void add_term(const Exponents& e, const Scalar& c);

  MultiPoly operator-() const;
  MultiPoly operator+(const MultiPoly& o) const;
  MultiPoly operator-(const MultiPoly& o) const;
  MultiPoly operator*(const MultiPoly& o) const;
  MultiPoly scaled(const Scalar& c) const;

  bool operator==(const MultiPoly& o) const;
  bool operator!=(const MultiPoly& o) const { return !(*this == o); }

  Scalar eval(std::span<const Scalar> point) const;

  // Human-readable form, e.g. "x1^2 + x1*x2 - 8*x1 - 8*x2".
  std::string str() const;

 private:
  void require_compatible(const MultiPoly& o) const;

  int vars_;
  Field field_;
  std::map<Exponents, Scalar, GradedLexLess> terms_;
};

// Long division of q by a nonzero polynomial e that is univariate in `axis`,
// treating that coordinate as "the" variable and the remaining coordinates
// as constants. Returns (quotient, remainder) with deg_axis(remainder) <
// deg(e); q == quotient*e + remainder exactly. Throws std::invalid_argument
// if e is zero, not univariate in axis, or its leading coefficient is not
// invertible. Exact fields only.
std::pair<MultiPoly, MultiPoly> divide_by_univariate(const MultiPoly& q,
                                                     const MultiPoly& e,
                                                     int axis = 0);

}  // namespace byzfit
