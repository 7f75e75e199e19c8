#include "byzfit/wb.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "byzfit/mvwb.hpp"

namespace byzfit {

NoiseAlphabet NoiseAlphabet::integer_band(long half_width, const Field& f) {
  if (half_width < 0) throw std::invalid_argument("noise half-width must be >= 0");
  if (f.kind == FieldKind::PrimeField &&
      2 * static_cast<uint64_t>(half_width) + 1 > f.modulus) {
    throw std::invalid_argument("noise band wider than the field");
  }
  NoiseAlphabet a{{}, Scalar::from_int(half_width, f)};
  for (long v = -half_width; v <= half_width; ++v) {
    a.offsets.push_back(Scalar::from_int(v, f));
  }
  return a;
}

void NoiseAlphabet::validate() const {
  if (offsets.empty()) throw std::invalid_argument("noise alphabet is empty");
  bool has_zero = false;
  for (size_t i = 0; i < offsets.size(); ++i) {
    if (offsets[i].field() != delta.field())
      throw std::invalid_argument("noise alphabet field mismatch");
    if (offsets[i].is_zero()) has_zero = true;
    for (size_t j = i + 1; j < offsets.size(); ++j) {
      if (offsets[i] == offsets[j])
        throw std::invalid_argument("duplicate noise offset");
    }
  }
  if (!has_zero) throw std::invalid_argument("noise alphabet must contain 0");
}

bool NoiseAlphabet::contains(const Scalar& v) const {
  return std::find(offsets.begin(), offsets.end(), v) != offsets.end();
}

bool within_delta(const Scalar& y, const Scalar& value,
                  const NoiseAlphabet& alphabet) {
  if (y.kind() == FieldKind::PrimeField) {
    return alphabet.contains(y - value);
  }
  if (y.kind() == FieldKind::Rational) {
    mpq_class diff = y.rat() - value.rat();
    return abs(diff) <= alphabet.delta.rat();
  }
  return std::fabs(y.dbl() - value.dbl()) <= alphabet.delta.dbl();
}

size_t ceil_fraction(double frac, size_t size) {
  if (frac <= 0.0 || size == 0) return 0;
  double raw = frac * static_cast<double>(size);
  double c = std::ceil(raw - 1e-9);
  return c <= 0.0 ? 0 : static_cast<size_t>(c);
}

void WBProblem::validate() const {
  if (degree_bound < 0 || error_bound < 0)
    throw std::invalid_argument("WBProblem: d, t must be >= 0");
  const size_t need = 2 * static_cast<size_t>(error_bound) +
                      static_cast<size_t>(degree_bound) + 1;
  if (points.size() < need) {
    throw std::invalid_argument("WBProblem: need N >= 2t+d+1 = " +
                                std::to_string(need) + " points, got " +
                                std::to_string(points.size()));
  }
  if (!points[0].first.field().exact())
    throw std::invalid_argument("WBProblem requires an exact field");
}

Outcome<WBResult> wb_decode(const WBProblem& prob) {
  prob.validate();
  std::vector<std::vector<Scalar>> xs;
  std::vector<Scalar> zs;
  xs.reserve(prob.points.size());
  zs.reserve(prob.points.size());
  for (const auto& [x, y] : prob.points) {
    xs.push_back({x});
    zs.push_back(y);
  }
  auto decoded =
      decode_with_locator(xs, zs, 1, prob.degree_bound, prob.error_bound, 0);
  if (!decoded.ok()) return decoded.failure();
  MVResult& res = decoded.value();
  return WBResult{std::move(res.poly), std::move(res.error_locator),
                  std::move(res.flagged)};
}

Outcome<FitReport> noise_enumerate_fit(const DataSet& S, double rho_clean, int d,
                                       const NoiseAlphabet& alphabet,
                                       const EnumerateOptions& opts) {
  if (S.k != 1)
    throw std::invalid_argument("noise_enumerate_fit expects 1-D data");
  return detail::enumerate_noise(S, rho_clean, d, alphabet, opts, 0);
}

Outcome<FitReport> degree_search(const DataSet& S, double rho_clean,
                                 const NoiseAlphabet& alphabet, int d_max,
                                 const EnumerateOptions& opts) {
  if (d_max < 0) throw std::invalid_argument("degree_search: d_max >= 0");
  std::map<int, Outcome<FitReport>> memo;
  uint64_t total_calls = 0;
  auto probe = [&](int d) -> const Outcome<FitReport>& {
    auto it = memo.find(d);
    if (it == memo.end()) {
      Outcome<FitReport> r = [&]() -> Outcome<FitReport> {
        try {
          return detail::enumerate_noise(S, rho_clean, d, alphabet, opts, 0);
        } catch (const std::invalid_argument&) {
          // e.g. dataset too small for this degree; treat as infeasible
          return Failure{Fail::Exhausted, "degree not supportable"};
        }
      }();
      if (r.ok()) total_calls += r.value().wb_calls;
      it = memo.emplace(d, std::move(r)).first;
    }
    return it->second;
  };

  int lo = 0, hi = d_max;
  while (lo < hi) {
    int mid = lo + (hi - lo) / 2;
    if (probe(mid).ok()) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  if (!probe(lo).ok()) {
    return Failure{Fail::NoDegreeFits,
                   "no degree in [0, " + std::to_string(d_max) + "] fits"};
  }
  // Monotonicity of feasibility in d is assumed but unproven; descend
  // linearly so the returned degree always has an infeasible predecessor.
  while (lo > 0 && probe(lo - 1).ok()) --lo;

  FitReport rep = probe(lo).value();
  rep.fitted_degree = lo;
  rep.wb_calls = total_calls;
  return rep;
}

}  // namespace byzfit
