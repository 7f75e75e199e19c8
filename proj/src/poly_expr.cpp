#include "byzfit/poly_expr.hpp"

#include <cctype>
#include <stdexcept>

#include "byzfit/json_io.hpp"

namespace byzfit {

namespace {

struct Parser {
  const std::string& text;
  size_t pos = 0;
  const Field& field;
  int max_var = 0;  // highest 1-based variable index seen

  explicit Parser(const std::string& t, const Field& f) : text(t), field(f) {}

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }

  [[noreturn]] void fail(const std::string& why) {
    throw std::invalid_argument("polynomial expression error at position " +
                                std::to_string(pos) + ": " + why);
  }

  // Terms carry a placeholder variable count; exponents are widened to the
  // final count after parsing. Store exponents sparsely instead.
  struct Node {
    // map from 1-based var index to exponent, with a scalar coefficient,
    // accumulated as a list of terms
    std::vector<std::pair<std::vector<std::pair<int, uint32_t>>, Scalar>> terms;
  };

  Node number_node(const Scalar& s) { return Node{{{{}, s}}}; }

  Node var_node(int index) {
    max_var = std::max(max_var, index);
    return Node{{{{{index, 1u}}, Scalar::one(field)}}};
  }

  Node add(const Node& a, const Node& b, bool negate_b) {
    Node out = a;
    for (auto term : b.terms) {
      if (negate_b) term.second = -term.second;
      out.terms.push_back(std::move(term));
    }
    return out;
  }

  Node mul(const Node& a, const Node& b) {
    Node out;
    for (const auto& [ea, ca] : a.terms) {
      for (const auto& [eb, cb] : b.terms) {
        std::vector<std::pair<int, uint32_t>> exps = ea;
        for (const auto& [var, e] : eb) {
          bool found = false;
          for (auto& [v2, e2] : exps) {
            if (v2 == var) {
              e2 += e;
              found = true;
              break;
            }
          }
          if (!found) exps.emplace_back(var, e);
        }
        out.terms.emplace_back(std::move(exps), ca * cb);
      }
    }
    return out;
  }

  Node power(const Node& base, uint32_t e) {
    Node out = number_node(Scalar::one(field));
    for (uint32_t i = 0; i < e; ++i) out = mul(out, base);
    return out;
  }

  Node parse_expr() {
    Node acc = parse_term();
    for (;;) {
      if (eat('+')) {
        acc = add(acc, parse_term(), false);
      } else if (eat('-')) {
        acc = add(acc, parse_term(), true);
      } else {
        return acc;
      }
    }
  }

  Node parse_term() {
    Node acc = parse_factor();
    while (eat('*')) acc = mul(acc, parse_factor());
    return acc;
  }

  Node parse_factor() {
    Node base = parse_atom();
    if (eat('^')) {
      skip_ws();
      size_t start = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      if (start == pos) fail("exponent must be a nonnegative integer");
      unsigned long e = std::stoul(text.substr(start, pos - start));
      return power(base, static_cast<uint32_t>(e));
    }
    return base;
  }

  Node parse_atom() {
    skip_ws();
    if (pos >= text.size()) fail("unexpected end of expression");
    char c = text[pos];
    if (c == '(') {
      ++pos;
      Node inner = parse_expr();
      if (!eat(')')) fail("expected ')'");
      return inner;
    }
    if (c == '-') {
      ++pos;
      Node f = parse_factor();
      for (auto& term : f.terms) term.second = -term.second;
      return f;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      size_t start = pos;
      while (pos < text.size() &&
             (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '.')) {
        ++pos;
      }
      // "a/b" rational literal: slash directly between numerals
      if (pos < text.size() && text[pos] == '/' && pos + 1 < text.size() &&
          std::isdigit(static_cast<unsigned char>(text[pos + 1]))) {
        ++pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      }
      return number_node(scalar_from_string(text.substr(start, pos - start), field));
    }
    if (c == 'x' || c == 'y' || c == 'z') {
      ++pos;
      if (c == 'x' && pos < text.size() &&
          std::isdigit(static_cast<unsigned char>(text[pos]))) {
        size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        int idx = std::stoi(text.substr(start, pos - start));
        if (idx < 1) fail("variable index must be >= 1");
        return var_node(idx);
      }
      return var_node(c == 'x' ? 1 : c == 'y' ? 2 : 3);
    }
    fail(std::string("unexpected character '") + c + "'");
  }
};

}  // namespace

MultiPoly parse_poly(const std::string& text, const Field& field, int vars) {
  Parser p(text, field);
  Parser::Node root = p.parse_expr();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input");
  int k = vars > 0 ? vars : std::max(p.max_var, 1);
  if (p.max_var > k) {
    throw std::invalid_argument("expression uses x" + std::to_string(p.max_var) +
                                " but only " + std::to_string(k) +
                                " variables were requested");
  }
  MultiPoly out(k, field);
  for (const auto& [exps, coeff] : root.terms) {
    Exponents e(static_cast<size_t>(k), 0);
    for (const auto& [var, exp] : exps) e[var - 1] += exp;
    out.add_term(e, coeff);
  }
  return out;
}

}  // namespace byzfit
