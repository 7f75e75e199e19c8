#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "byzfit/multipoly.hpp"

namespace byzfit {

// T_i(x) by the three-term recurrence. x must lie within 1e-12 of [-1,1]
// (clamped); anything further out throws std::invalid_argument.
double chebyshev_eval(int i, double x);

// Values T_0(x), ..., T_n(x).
std::vector<double> chebyshev_row(int n, double x);

// Values T_0'(x), ..., T_n'(x) via T_i' = i*U_{i-1}.
std::vector<double> chebyshev_deriv_row(int n, double x);

// Tensor Chebyshev expansion p(x) = sum_idx c_idx * prod_a T_{idx_a}(x_a)
// over per-axis degree caps, plus the noise bound the fit achieved.
// Coefficients are stored row-major: axis 0 slowest.
struct ChebModel {
  int vars = 2;
  std::vector<int> degrees;    // per-axis caps, inclusive (0-indexed basis)
  std::vector<double> coeffs;  // size prod(degrees[a]+1)
  double delta_achieved = 0.0;

  size_t coeff_count() const;
  size_t flat_index(std::span<const int> idx) const;
  double coeff(std::span<const int> idx) const;

  double eval(std::span<const double> point) const;
  // Partial derivative along one axis.
  double eval_deriv(std::span<const double> point, int axis) const;

  // Convenience for the bivariate case.
  static ChebModel bivariate(int n, int m);
  double at(double x, double y) const;
};

// Expands the tensor Chebyshev model into the monomial basis over Float64.
// Pointwise equal to the expansion within ~1e-9 on [-1,1]^k.
MultiPoly cheb_to_monomial(const ChebModel& model);

}  // namespace byzfit
