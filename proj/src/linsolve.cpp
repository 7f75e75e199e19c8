#include "byzfit/linsolve.hpp"

#include <cstdint>
#include <stdexcept>

namespace byzfit {

namespace {

struct Echelon {
  std::vector<int> pivot_col;  // per pivot row
  int rank = 0;
};

// Fraction-free (Bareiss) elimination on an integer augmented matrix.
// Entries after step r are, up to sign, minors of the original matrix, so
// each division is exact; the quotient check guards the invariant.
Outcome<LinearSolution> solve_rational(const std::vector<std::vector<Scalar>>& A,
                                       const std::vector<Scalar>& b) {
  const size_t m = A.size();
  const size_t n = m == 0 ? 0 : A[0].size();
  std::vector<std::vector<mpz_class>> M(m, std::vector<mpz_class>(n + 1));
  for (size_t i = 0; i < m; ++i) {
    // Row-wise denominator clearing keeps the system equivalent.
    mpz_class lcm_den = 1;
    for (size_t j = 0; j < n; ++j) {
      mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(),
              A[i][j].rat().get_den_mpz_t());
    }
    mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), b[i].rat().get_den_mpz_t());
    for (size_t j = 0; j <= n; ++j) {
      const mpq_class& q = j < n ? A[i][j].rat() : b[i].rat();
      M[i][j] = q.get_num() * (lcm_den / q.get_den());
    }
  }

  Echelon ech;
  mpz_class prev = 1;
  size_t r = 0;
  for (size_t c = 0; c < n && r < m; ++c) {
    size_t pr = r;
    while (pr < m && M[pr][c] == 0) ++pr;
    if (pr == m) continue;
    std::swap(M[r], M[pr]);
    for (size_t i = r + 1; i < m; ++i) {
      for (size_t j = c + 1; j <= n; ++j) {
        mpz_class num = M[r][c] * M[i][j] - M[i][c] * M[r][j];
        mpz_class quot, rem;
        mpz_tdiv_qr(quot.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(),
                    prev.get_mpz_t());
        if (rem != 0) throw std::logic_error("Bareiss division not exact");
        M[i][j] = std::move(quot);
      }
      M[i][c] = 0;
    }
    prev = M[r][c];
    ech.pivot_col.push_back(static_cast<int>(c));
    ++r;
  }
  ech.rank = static_cast<int>(r);

  for (size_t i = r; i < m; ++i) {
    if (M[i][n] != 0) {
      return Failure{Fail::Infeasible,
                     "inconsistent linear system (row " + std::to_string(i) + ")"};
    }
  }

  std::vector<mpq_class> x(n, mpq_class(0));
  for (int row = ech.rank - 1; row >= 0; --row) {
    size_t c = static_cast<size_t>(ech.pivot_col[static_cast<size_t>(row)]);
    mpq_class acc(M[static_cast<size_t>(row)][n]);
    for (size_t j = c + 1; j < n; ++j) {
      if (M[static_cast<size_t>(row)][j] != 0 && x[j] != 0) {
        acc -= mpq_class(M[static_cast<size_t>(row)][j]) * x[j];
      }
    }
    acc /= mpq_class(M[static_cast<size_t>(row)][c]);
    acc.canonicalize();
    x[c] = std::move(acc);
  }

  LinearSolution sol;
  sol.rank = ech.rank;
  sol.x.reserve(n);
  for (size_t j = 0; j < n; ++j) sol.x.push_back(Scalar::rational(x[j]));
  return sol;
}

Outcome<LinearSolution> solve_gf(const std::vector<std::vector<Scalar>>& A,
                                 const std::vector<Scalar>& b, const Field& field) {
  const size_t m = A.size();
  const size_t n = m == 0 ? 0 : A[0].size();
  std::vector<std::vector<Scalar>> M(m);
  for (size_t i = 0; i < m; ++i) {
    M[i] = A[i];
    M[i].push_back(b[i]);
  }

  std::vector<int> pivot_col;
  size_t r = 0;
  for (size_t c = 0; c < n && r < m; ++c) {
    size_t pr = r;
    while (pr < m && M[pr][c].is_zero()) ++pr;
    if (pr == m) continue;
    std::swap(M[r], M[pr]);
    Scalar inv = M[r][c].inverse();
    for (size_t j = c; j <= n; ++j) M[r][j] *= inv;
    for (size_t i = r + 1; i < m; ++i) {
      if (M[i][c].is_zero()) continue;
      Scalar f = M[i][c];
      for (size_t j = c; j <= n; ++j) M[i][j] -= f * M[r][j];
    }
    pivot_col.push_back(static_cast<int>(c));
    ++r;
  }

  for (size_t i = r; i < m; ++i) {
    if (!M[i][n].is_zero()) {
      return Failure{Fail::Infeasible,
                     "inconsistent linear system (row " + std::to_string(i) + ")"};
    }
  }

  std::vector<Scalar> x(n, Scalar::zero(field));
  for (int row = static_cast<int>(r) - 1; row >= 0; --row) {
    size_t c = static_cast<size_t>(pivot_col[static_cast<size_t>(row)]);
    Scalar acc = M[static_cast<size_t>(row)][n];
    for (size_t j = c + 1; j < n; ++j) {
      if (!M[static_cast<size_t>(row)][j].is_zero() && !x[j].is_zero()) {
        acc -= M[static_cast<size_t>(row)][j] * x[j];
      }
    }
    x[c] = acc;  // pivot normalized to 1
  }

  LinearSolution sol;
  sol.rank = static_cast<int>(r);
  sol.x = std::move(x);
  return sol;
}

}  // namespace

Outcome<LinearSolution> solve_linear(const std::vector<std::vector<Scalar>>& A,
                                     const std::vector<Scalar>& b) {
  if (A.size() != b.size()) throw std::invalid_argument("solve_linear: |A| != |b|");
  if (A.empty()) return LinearSolution{};
  const Field field = b[0].field();
  if (!field.exact())
    throw std::invalid_argument("solve_linear handles exact fields only");
  const size_t n = A[0].size();
  for (size_t i = 0; i < A.size(); ++i) {
    if (A[i].size() != n) throw std::invalid_argument("solve_linear: ragged matrix");
    for (const Scalar& s : A[i]) {
      if (s.field() != field) throw std::invalid_argument("solve_linear: field mismatch");
    }
    if (b[i].field() != field) throw std::invalid_argument("solve_linear: field mismatch");
  }
  if (field.kind == FieldKind::Rational) return solve_rational(A, b);
  return solve_gf(A, b, field);
}

}  // namespace byzfit
