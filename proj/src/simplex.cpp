#include "byzfit/simplex.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace byzfit {

namespace {

// Dictionary tableau in the compact form: row i encodes
//   x_{B[i]} = D[i][n+1] - sum_j D[i][j] * x_{N[j]},
// row m is the objective, row m+1 the phase-1 auxiliary objective.
// Column n belongs to the artificial variable (label -1).
struct Tableau {
  int m, n;
  std::vector<std::vector<double>> D;
  std::vector<int> N, B;
  SimplexOptions opts;
  uint64_t pivots = 0;

  Tableau(const std::vector<std::vector<double>>& A, const std::vector<double>& b,
          const std::vector<double>& c, const SimplexOptions& o)
      : m((int)b.size()),
        n((int)c.size()),
        D(m + 2, std::vector<double>(n + 2, 0.0)),
        N(n + 1),
        B(m),
        opts(o) {
    for (int i = 0; i < m; ++i) {
      B[i] = n + i;
      for (int j = 0; j < n; ++j) D[i][j] = A[i][j];
      D[i][n] = -1.0;
      D[i][n + 1] = b[i];
    }
    for (int j = 0; j < n; ++j) {
      N[j] = j;
      D[m][j] = -c[j];
    }
    N[n] = -1;
    D[m + 1][n] = 1.0;
  }

  void pivot(int r, int s) {
    ++pivots;
    double* a = D[r].data();
    double inv = 1.0 / a[s];
    for (int i = 0; i < m + 2; ++i) {
      if (i != r && std::fabs(D[i][s]) > 1e-14) {
        double* row = D[i].data();
        double f = row[s] * inv;
        for (int j = 0; j < n + 2; ++j) row[j] -= a[j] * f;
        row[s] = a[s] * f;
      }
    }
    for (int j = 0; j < n + 2; ++j) {
      if (j != s) D[r][j] *= inv;
    }
    for (int i = 0; i < m + 2; ++i) {
      if (i != r) D[i][s] *= -inv;
    }
    D[r][s] = inv;
    std::swap(B[r], N[s]);
  }

  // Simplex loop on objective row `obj_row`; columns labeled `skip_label`
  // may not enter (keeps x0 out of phase 2). False on unbounded/limit.
  bool optimize(int obj_row, int skip_label, SimplexResult::Status& status) {
    const double eps = opts.eps;
    for (;;) {
      if (pivots > opts.max_pivots) {
        status = SimplexResult::Status::PivotLimit;
        return false;
      }
      int s = -1;
      for (int j = 0; j <= n; ++j) {
        if (N[j] == skip_label) continue;
        double red = D[obj_row][j];
        if (red < -eps) {
          if (s == -1) {
            s = j;
          } else if (opts.rule == PivotRule::Bland) {
            if (N[j] < N[s]) s = j;
          } else if (red < D[obj_row][s] ||
                     (red == D[obj_row][s] && N[j] < N[s])) {
            s = j;
          }
        }
      }
      if (s == -1) return true;  // optimal
      int r = -1;
      double best = std::numeric_limits<double>::infinity();
      for (int i = 0; i < m; ++i) {
        if (D[i][s] <= eps) continue;
        double ratio = D[i][n + 1] / D[i][s];
        if (r == -1 || ratio < best - 1e-12 ||
            (std::fabs(ratio - best) <= 1e-12 && B[i] < B[r])) {
          r = i;
          best = ratio;
        }
      }
      if (r == -1) {
        status = SimplexResult::Status::Unbounded;
        return false;
      }
      pivot(r, s);
    }
  }
};

}  // namespace

SimplexResult simplex_solve(const std::vector<std::vector<double>>& A,
                            const std::vector<double>& b,
                            const std::vector<double>& c,
                            const SimplexOptions& opts) {
  if (A.size() != b.size()) throw std::invalid_argument("simplex: |A| != |b|");
  for (const auto& row : A) {
    if (row.size() != c.size()) throw std::invalid_argument("simplex: ragged A");
  }
  SimplexResult result;
  Tableau t(A, b, c, opts);
  const int m = t.m, n = t.n;

  // Phase 1 only when the all-slack basis is infeasible.
  int worst = 0;
  for (int i = 1; i < m; ++i) {
    if (t.D[i][n + 1] < t.D[worst][n + 1]) worst = i;
  }
  if (m > 0 && t.D[worst][n + 1] < -opts.eps) {
    t.pivot(worst, n);  // x0 enters; every RHS becomes nonnegative
    SimplexResult::Status st = SimplexResult::Status::Optimal;
    if (!t.optimize(m + 1, -2, st)) {
      result.status = st;
      result.pivots = t.pivots;
      return result;
    }
    if (t.D[m + 1][n + 1] < -opts.eps) {
      result.status = SimplexResult::Status::Infeasible;
      result.infeasible_row = worst;  // certificate: the row that forced phase 1
      result.pivots = t.pivots;
      return result;
    }
    // Drive x0 out of the basis if it lingers at value zero.
    for (int i = 0; i < m; ++i) {
      if (t.B[i] == -1) {
        int s = -1;
        for (int j = 0; j <= n; ++j) {
          if (t.N[j] == -1) continue;
          if (std::fabs(t.D[i][j]) > opts.eps && (s == -1 || t.N[j] < t.N[s])) s = j;
        }
        if (s != -1) t.pivot(i, s);
        break;
      }
    }
  }

  SimplexResult::Status st = SimplexResult::Status::Optimal;
  if (!t.optimize(m, -1, st)) {
    result.status = st;
    result.pivots = t.pivots;
    return result;
  }

  result.status = SimplexResult::Status::Optimal;
  result.objective = t.D[m][n + 1];
  result.x.assign(n, 0.0);
  for (int i = 0; i < m; ++i) {
    if (t.B[i] >= 0 && t.B[i] < n) result.x[t.B[i]] = t.D[i][n + 1];
  }
  result.pivots = t.pivots;
  return result;
}

}  // namespace byzfit
