#include "byzfit/chebyshev.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace byzfit {

namespace {

double clamp_domain(double x) {
  if (x < -1.0 - 1e-12 || x > 1.0 + 1e-12 || std::isnan(x)) {
    throw std::invalid_argument("chebyshev_eval: x outside [-1,1] clamp band");
  }
  return std::clamp(x, -1.0, 1.0);
}

}  // namespace

double chebyshev_eval(int i, double x) {
  if (i < 0) throw std::invalid_argument("chebyshev_eval: negative index");
  x = clamp_domain(x);
  if (i == 0) return 1.0;
  if (i == 1) return x;
  double tm1 = 1.0, t = x;
  for (int k = 2; k <= i; ++k) {
    double next = 2.0 * x * t - tm1;
    tm1 = t;
    t = next;
  }
  return t;
}

std::vector<double> chebyshev_row(int n, double x) {
  x = clamp_domain(x);
  std::vector<double> row(static_cast<size_t>(n) + 1);
  row[0] = 1.0;
  if (n >= 1) row[1] = x;
  for (int k = 2; k <= n; ++k) {
    row[static_cast<size_t>(k)] = 2.0 * x * row[static_cast<size_t>(k - 1)] -
                                  row[static_cast<size_t>(k - 2)];
  }
  return row;
}

std::vector<double> chebyshev_deriv_row(int n, double x) {
  x = clamp_domain(x);
  // U_{k}(x) recurrence, then T_k' = k * U_{k-1}.
  std::vector<double> u(static_cast<size_t>(std::max(n, 1)));
  u[0] = 1.0;
  if (n >= 2) u[1] = 2.0 * x;
  for (int k = 2; k < n; ++k) {
    u[static_cast<size_t>(k)] = 2.0 * x * u[static_cast<size_t>(k - 1)] -
                                u[static_cast<size_t>(k - 2)];
  }
  std::vector<double> d(static_cast<size_t>(n) + 1, 0.0);
  for (int k = 1; k <= n; ++k) {
    d[static_cast<size_t>(k)] = k * u[static_cast<size_t>(k - 1)];
  }
  return d;
}

size_t ChebModel::coeff_count() const {
  size_t n = 1;
  for (int d : degrees) n *= static_cast<size_t>(d) + 1;
  return n;
}

size_t ChebModel::flat_index(std::span<const int> idx) const {
  size_t flat = 0;
  for (size_t a = 0; a < idx.size(); ++a) {
    flat = flat * (static_cast<size_t>(degrees[a]) + 1) + static_cast<size_t>(idx[a]);
  }
  return flat;
}

double ChebModel::coeff(std::span<const int> idx) const {
  return coeffs[flat_index(idx)];
}

namespace {

// Walks the tensor index space and accumulates coeff * prod(basis rows).
double tensor_sum(const ChebModel& m,
                  const std::vector<std::vector<double>>& rows) {
  const size_t k = m.degrees.size();
  std::vector<int> idx(k, 0);
  double acc = 0.0;
  size_t flat = 0;
  for (;;) {
    double prod = m.coeffs[flat];
    if (prod != 0.0) {
      for (size_t a = 0; a < k; ++a) prod *= rows[a][static_cast<size_t>(idx[a])];
      acc += prod;
    }
    // odometer increment, last axis fastest (matches row-major flat order)
    size_t a = k;
    while (a > 0) {
      --a;
      if (idx[a] < m.degrees[a]) {
        ++idx[a];
        break;
      }
      idx[a] = 0;
      if (a == 0) return acc;
    }
    ++flat;
  }
}

}  // namespace

double ChebModel::eval(std::span<const double> point) const {
  if (point.size() != degrees.size())
    throw std::invalid_argument("ChebModel::eval dimension mismatch");
  std::vector<std::vector<double>> rows;
  rows.reserve(degrees.size());
  for (size_t a = 0; a < degrees.size(); ++a) {
    rows.push_back(chebyshev_row(degrees[a], point[a]));
  }
  return tensor_sum(*this, rows);
}

double ChebModel::eval_deriv(std::span<const double> point, int axis) const {
  if (point.size() != degrees.size())
    throw std::invalid_argument("ChebModel::eval_deriv dimension mismatch");
  std::vector<std::vector<double>> rows;
  rows.reserve(degrees.size());
  for (size_t a = 0; a < degrees.size(); ++a) {
    if (static_cast<int>(a) == axis) {
      rows.push_back(chebyshev_deriv_row(degrees[a], point[a]));
    } else {
      rows.push_back(chebyshev_row(degrees[a], point[a]));
    }
  }
  return tensor_sum(*this, rows);
}

ChebModel ChebModel::bivariate(int n, int m) {
  ChebModel model;
  model.vars = 2;
  model.degrees = {n, m};
  model.coeffs.assign(static_cast<size_t>(n + 1) * static_cast<size_t>(m + 1), 0.0);
  return model;
}

double ChebModel::at(double x, double y) const {
  const double pt[2] = {x, y};
  return eval(std::span<const double>(pt, 2));
}

MultiPoly cheb_to_monomial(const ChebModel& model) {
  const int k = static_cast<int>(model.degrees.size());
  const Field f = Field::f64();
  // Monomial coefficient arrays of T_0..T_max per axis.
  int max_deg = 0;
  for (int d : model.degrees) max_deg = std::max(max_deg, d);
  std::vector<std::vector<double>> t(static_cast<size_t>(max_deg) + 1);
  t[0] = {1.0};
  if (max_deg >= 1) t[1] = {0.0, 1.0};
  for (int n = 2; n <= max_deg; ++n) {
    std::vector<double> cur(static_cast<size_t>(n) + 1, 0.0);
    for (size_t j = 0; j < t[static_cast<size_t>(n - 1)].size(); ++j) {
      cur[j + 1] += 2.0 * t[static_cast<size_t>(n - 1)][j];
    }
    for (size_t j = 0; j < t[static_cast<size_t>(n - 2)].size(); ++j) {
      cur[j] -= t[static_cast<size_t>(n - 2)][j];
    }
    t[static_cast<size_t>(n)] = std::move(cur);
  }

  MultiPoly out(k, f);
  std::vector<int> idx(static_cast<size_t>(k), 0);
  size_t flat = 0;
  const size_t total = model.coeff_count();
  for (; flat < total; ++flat) {
    double c = model.coeffs[flat];
    if (c != 0.0) {
      // Expand prod_a T_{idx_a}(x_a) into monomials of this term.
      MultiPoly term = MultiPoly::constant(k, Scalar::f64(c));
      for (int a = 0; a < k; ++a) {
        MultiPoly axis_poly(k, f);
        const auto& arr = t[static_cast<size_t>(idx[static_cast<size_t>(a)])];
        for (size_t j = 0; j < arr.size(); ++j) {
          if (arr[j] == 0.0) continue;
          Exponents e(static_cast<size_t>(k), 0);
          e[static_cast<size_t>(a)] = static_cast<uint32_t>(j);
          axis_poly.add_term(e, Scalar::f64(arr[j]));
        }
        term = term * axis_poly;
      }
      out = out + term;
    }
    size_t a = static_cast<size_t>(k);
    while (a > 0) {
      --a;
      if (idx[a] < model.degrees[a]) {
        ++idx[a];
        break;
      }
      idx[a] = 0;
    }
  }
  return out;
}

}  // namespace byzfit
