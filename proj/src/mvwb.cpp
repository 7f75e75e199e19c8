#include "byzfit/mvwb.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

#include "byzfit/linsolve.hpp"

namespace byzfit {

uint64_t required_sample_size(int d, int m, int t) {
  if (d < 0 || m < 1 || t < 0)
    throw std::invalid_argument("required_sample_size: d >= 0, m >= 1, t >= 0");
  uint64_t c = count_monomials(d + t, m);
  if (c > std::numeric_limits<uint64_t>::max() - static_cast<uint64_t>(t))
    throw std::overflow_error("required_sample_size overflow");
  return c + static_cast<uint64_t>(t);
}

void MVProblem::validate() const {
  if (vars < 2) throw std::invalid_argument("MVProblem: vars must be >= 2");
  if (degree < 0 || t < 0) throw std::invalid_argument("MVProblem: degree, t >= 0");
  if (axis < 0 || axis >= vars) throw std::invalid_argument("MVProblem: axis out of range");
  if (xs.size() != zs.size()) throw std::invalid_argument("MVProblem: |xs| != |zs|");
  for (const auto& x : xs) {
    if (x.size() != static_cast<size_t>(vars))
      throw std::invalid_argument("MVProblem: point dimension mismatch");
  }
}

namespace {

void require_distinct_axis(const std::vector<std::vector<Scalar>>& xs, int axis,
                           int vars) {
  for (size_t i = 0; i < xs.size(); ++i) {
    for (size_t j = i + 1; j < xs.size(); ++j) {
      if (xs[i][static_cast<size_t>(axis)] == xs[j][static_cast<size_t>(axis)]) {
        // Suggest a better locator axis before giving up.
        int best_axis = axis;
        size_t best = 0;
        for (int a = 0; a < vars; ++a) {
          std::vector<std::string> seen;
          for (const auto& x : xs) seen.push_back(x[static_cast<size_t>(a)].str());
          std::sort(seen.begin(), seen.end());
          size_t distinct = static_cast<size_t>(
              std::unique(seen.begin(), seen.end()) - seen.begin());
          if (distinct > best) {
            best = distinct;
            best_axis = a;
          }
        }
        throw std::invalid_argument(
            "duplicate coordinate on locator axis " + std::to_string(axis) +
            " (points " + std::to_string(i) + ", " + std::to_string(j) +
            "); axis " + std::to_string(best_axis) + " has the most distinct values");
      }
    }
  }
}

}  // namespace

Outcome<MVResult> decode_with_locator(const std::vector<std::vector<Scalar>>& xs,
                                      const std::vector<Scalar>& zs, int vars,
                                      int degree, int t, int axis) {
  if (vars < 1 || degree < 0 || t < 0 || axis < 0 || axis >= vars)
    throw std::invalid_argument("decode_with_locator: bad parameters");
  if (xs.size() != zs.size() || xs.empty())
    throw std::invalid_argument("decode_with_locator: empty or mismatched input");
  const Field field = zs[0].field();
  if (!field.exact())
    throw std::invalid_argument("WB decoding requires an exact field");
  const size_t n = xs.size();
  const uint64_t need = required_sample_size(degree, vars, t);
  if (n < need) {
    throw std::invalid_argument("need at least " + std::to_string(need) +
                                " points for d=" + std::to_string(degree) +
                                ", t=" + std::to_string(t) + ", m=" +
                                std::to_string(vars) + "; got " + std::to_string(n));
  }
  require_distinct_axis(xs, axis, vars);

  const std::vector<Exponents> monomials = enumerate_monomials(vars, degree + t);
  const size_t nq = monomials.size();
  const size_t cols = nq + static_cast<size_t>(t);

  std::vector<std::vector<Scalar>> A(n, std::vector<Scalar>(cols, Scalar::zero(field)));
  std::vector<Scalar> rhs;
  rhs.reserve(n);
  const int maxe = degree + t;
  std::vector<std::vector<Scalar>> powers(static_cast<size_t>(vars));
  for (size_t i = 0; i < n; ++i) {
    for (int a = 0; a < vars; ++a) {
      auto& pw = powers[static_cast<size_t>(a)];
      pw.assign(1, Scalar::one(field));
      for (int e = 1; e <= maxe; ++e) pw.push_back(pw.back() * xs[i][static_cast<size_t>(a)]);
    }
    for (size_t j = 0; j < nq; ++j) {
      Scalar v = Scalar::one(field);
      for (int a = 0; a < vars; ++a) {
        uint32_t e = monomials[j][static_cast<size_t>(a)];
        if (e != 0) v *= powers[static_cast<size_t>(a)][e];
      }
      A[i][j] = std::move(v);
    }
    const auto& pax = powers[static_cast<size_t>(axis)];
    for (int l = 0; l < t; ++l) {
      A[i][nq + static_cast<size_t>(l)] = -(zs[i] * pax[static_cast<size_t>(l)]);
    }
    rhs.push_back(zs[i] * pax[static_cast<size_t>(t)]);
  }

  auto solved = solve_linear(A, rhs);
  if (!solved.ok()) return solved.failure();
  const std::vector<Scalar>& sol = solved.value().x;

  MultiPoly q(vars, field);
  for (size_t j = 0; j < nq; ++j) q.add_term(monomials[j], sol[j]);
  MultiPoly e(vars, field);
  Exponents ee(static_cast<size_t>(vars), 0);
  ee[static_cast<size_t>(axis)] = static_cast<uint32_t>(t);
  e.add_term(ee, Scalar::one(field));  // monic normalization
  for (int l = 0; l < t; ++l) {
    ee[static_cast<size_t>(axis)] = static_cast<uint32_t>(l);
    e.add_term(ee, sol[nq + static_cast<size_t>(l)]);
  }

  auto [quotient, remainder] = divide_by_univariate(q, e, axis);
  if (!remainder.is_zero()) {
    return Failure{Fail::NotDivisible, "error locator does not divide q"};
  }

  MVResult result{std::move(quotient), std::move(e), std::move(q), {}};
  for (size_t i = 0; i < n; ++i) {
    if (result.poly.eval(xs[i]) != zs[i]) result.flagged.push_back(i);
  }
  if (result.flagged.size() > static_cast<size_t>(t)) {
    return Failure{Fail::TooManyErrors,
                   std::to_string(result.flagged.size()) +
                       " disagreements exceed t=" + std::to_string(t)};
  }
  return result;
}

Outcome<MVResult> mv_wb_decode(const MVProblem& prob) {
  prob.validate();
  return decode_with_locator(prob.xs, prob.zs, prob.vars, prob.degree, prob.t,
                             prob.axis);
}

namespace detail {

// Shared Algorithm-1 enumeration engine; dimension-independent.
Outcome<FitReport> enumerate_noise(const DataSet& S, double rho_clean, int d,
                                   const NoiseAlphabet& alphabet,
                                   const EnumerateOptions& opts, int axis) {
  const auto t_start = std::chrono::steady_clock::now();
  S.validate();
  alphabet.validate();
  if (!(rho_clean > 0.0 && rho_clean <= 1.0))
    throw std::invalid_argument("rho_clean must lie in (0, 1]");
  if (d < 0) throw std::invalid_argument("degree must be >= 0");
  if (!S.field.exact())
    throw std::invalid_argument("noise enumeration requires an exact field");
  if (alphabet.delta.field() != S.field)
    throw std::invalid_argument("alphabet field does not match dataset field");
  const size_t n = S.size();
  const int m = S.k;

  auto required = [&](size_t s) -> uint64_t {
    size_t t = ceil_fraction(1.0 - rho_clean, s);
    return required_sample_size(d, m, static_cast<int>(t));
  };
  size_t subset_size = 0;
  if (opts.subset_size) {
    subset_size = *opts.subset_size;
    if (subset_size > n || subset_size < required(subset_size)) {
      throw std::invalid_argument("subset_size " + std::to_string(subset_size) +
                                  " cannot support d=" + std::to_string(d) +
                                  " at rho_clean=" + std::to_string(rho_clean));
    }
  } else {
    bool found = false;
    for (size_t s = count_monomials(d, m); s <= n; ++s) {
      if (s >= required(s)) {
        subset_size = s;
        found = true;
        break;
      }
    }
    if (!found) {
      throw std::invalid_argument(
          "dataset too small: no subset size within " + std::to_string(n) +
          " points supports d=" + std::to_string(d) +
          " at rho_clean=" + std::to_string(rho_clean));
    }
  }
  const int t_sub = static_cast<int>(ceil_fraction(1.0 - rho_clean, subset_size));

  // S' is the dataset prefix unless a seeded-random subset was requested.
  std::vector<size_t> sub(n);
  std::iota(sub.begin(), sub.end(), size_t{0});
  if (opts.random_subset_seed) {
    std::mt19937_64 rng(*opts.random_subset_seed);
    std::shuffle(sub.begin(), sub.end(), rng);
  }
  sub.resize(subset_size);
  std::sort(sub.begin(), sub.end());
  std::vector<size_t> held_out;
  {
    std::vector<bool> in_sub(n, false);
    for (size_t i : sub) in_sub[i] = true;
    for (size_t i = 0; i < n; ++i) {
      if (!in_sub[i]) held_out.push_back(i);
    }
  }

  std::vector<std::vector<Scalar>> sub_xs;
  std::vector<Scalar> sub_zs;
  sub_xs.reserve(subset_size);
  sub_zs.reserve(subset_size);
  for (size_t i : sub) {
    sub_xs.push_back(S.xs[i]);
    sub_zs.push_back(S.zs[i]);
  }
  require_distinct_axis(sub_xs, axis, m);

  const size_t allowed_misses = ceil_fraction(1.0 - rho_clean, held_out.size());
  const size_t asize = alphabet.offsets.size();
  std::vector<size_t> odo(subset_size, 0);
  std::vector<Scalar> shifted = sub_zs;
  uint64_t calls = 0;

  for (;;) {
    if (calls >= opts.budget) {
      return Failure{Fail::BudgetExceeded,
                     "enumeration cap of " + std::to_string(opts.budget) +
                         " decoder calls reached"};
    }
    for (size_t i = 0; i < subset_size; ++i) {
      shifted[i] = sub_zs[i] + alphabet.offsets[odo[i]];
    }
    ++calls;
    auto decoded = decode_with_locator(sub_xs, shifted, m, d, t_sub, axis);
    if (decoded.ok()) {
      const MVResult& res = decoded.value();
      size_t misses = 0;
      for (size_t j : held_out) {
        if (!within_delta(S.zs[j], res.poly.eval(S.xs[j]), alphabet)) ++misses;
      }
      if (misses <= allowed_misses) {
        FitReport rep;
        rep.poly = res.poly;
        rep.locator = res.error_locator;
        rep.q = res.q;
        rep.fitted_degree = d;
        rep.wb_calls = calls;
        for (size_t i = 0; i < subset_size; ++i) {
          rep.noise_vector.push_back(alphabet.offsets[odo[i]]);
        }
        for (size_t i = 0; i < n; ++i) {
          if (!within_delta(S.zs[i], res.poly.eval(S.xs[i]), alphabet)) {
            rep.flagged.push_back(S.origin_index(i));
          }
        }
        rep.delta_achieved = std::abs(alphabet.delta.to_double());
        fill_poly_residuals(rep, S);
        rep.elapsed_ms = std::chrono::duration<double, std::milli>(
                             std::chrono::steady_clock::now() - t_start)
                             .count();
        return rep;
      }
    }
    // lexicographic successor: last position advances fastest
    size_t pos = subset_size;
    for (;;) {
      if (pos == 0) {
        return Failure{Fail::Exhausted,
                       "no noise vector yields an acceptable polynomial (" +
                           std::to_string(calls) + " decoder calls)"};
      }
      --pos;
      if (++odo[pos] < asize) break;
      odo[pos] = 0;
    }
  }
}

}  // namespace detail

Outcome<FitReport> mv_noise_enumerate_fit(const DataSet& S, double rho_clean,
                                          int d, const NoiseAlphabet& alphabet,
                                          const EnumerateOptions& opts) {
  if (S.k < 2)
    throw std::invalid_argument("mv_noise_enumerate_fit expects k >= 2 data");
  return detail::enumerate_noise(S, rho_clean, d, alphabet, opts, 0);
}

}  // namespace byzfit
