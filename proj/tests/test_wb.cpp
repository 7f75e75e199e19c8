#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "byzfit/rng.hpp"
#include "byzfit/wb.hpp"

using namespace byzfit;

namespace {

WBProblem gf_problem(uint64_t q, std::vector<std::pair<long, long>> pts, int d,
                     int t) {
  WBProblem prob;
  const Field f = Field::gf(q);
  for (auto [x, y] : pts) {
    prob.points.emplace_back(Scalar::from_int(x, f), Scalar::from_int(y, f));
  }
  prob.degree_bound = d;
  prob.error_bound = t;
  return prob;
}

MultiPoly poly1(const Field& f, std::vector<long> coeffs) {  // ascending degree
  MultiPoly p(1, f);
  for (size_t i = 0; i < coeffs.size(); ++i) {
    p.add_term({static_cast<uint32_t>(i)}, Scalar::from_int(coeffs[i], f));
  }
  return p;
}

DataSet dataset_1d(const Field& f, std::vector<std::pair<long, long>> pts) {
  DataSet ds;
  ds.k = 1;
  ds.field = f;
  for (auto [x, y] : pts) {
    ds.xs.push_back({Scalar::from_int(x, f)});
    ds.zs.push_back(Scalar::from_int(y, f));
  }
  return ds;
}

}  // namespace

TEST_CASE("wb_decode on the GF(7) instance, against brute force") {
  const Field F = Field::gf(7);
  std::vector<std::pair<long, long>> pts{{0, 1}, {1, 2}, {2, 5}, {3, 4}, {4, 5}};

  // Oracle: enumerate all 49 degree-<=1 polynomials over GF(7); exactly one
  // lies within Hamming distance 1 of the data.
  std::vector<std::pair<long, long>> winners;
  for (long a = 0; a < 7; ++a) {
    for (long b = 0; b < 7; ++b) {
      int dist = 0;
      for (auto [x, y] : pts) {
        if ((a * x + b) % 7 != y % 7) ++dist;
      }
      if (dist <= 1) winners.emplace_back(b, a);
    }
  }
  REQUIRE(winners.size() == 1);
  CHECK(winners[0] == std::pair<long, long>{1, 1});  // p = x + 1

  auto res = wb_decode(gf_problem(7, pts, 1, 1));
  REQUIRE(res.ok());
  CHECK(res.value().poly == poly1(F, {1, 1}));
  CHECK(res.value().corrected_indices == std::vector<size_t>{2});
  // locator is monic of degree exactly t and vanishes on the flagged x
  CHECK(*res.value().error_locator.degree_in(0) == 1);
  CHECK(res.value().error_locator.coeff({1}) == Scalar::one(F));
  std::vector<Scalar> at{Scalar::from_int(2, F)};
  CHECK(res.value().error_locator.eval(at).is_zero());
}

TEST_CASE("wb_decode trivial and planted instances") {
  SUBCASE("constant, error-free, rational") {
    const Field Q = Field::rational();
    WBProblem prob;
    for (long x : {0, 1, 2}) {
      prob.points.emplace_back(Scalar::from_int(x, Q), Scalar::from_int(3, Q));
    }
    prob.degree_bound = 0;
    prob.error_bound = 0;
    auto res = wb_decode(prob);
    REQUIRE(res.ok());
    CHECK(res.value().poly == poly1(Q, {3}));
    CHECK(res.value().corrected_indices.empty());
    CHECK(res.value().error_locator == MultiPoly::constant(1, Scalar::one(Q)));
  }
  SUBCASE("d=2 t=2 over GF(101), two planted corruptions") {
    const Field F = Field::gf(101);
    MultiPoly truth = poly1(F, {100, 0, 1});  // x^2 - 1
    WBProblem prob;
    for (long x = 0; x <= 6; ++x) {
      Scalar xv = Scalar::from_int(x, F);
      std::vector<Scalar> at{xv};
      Scalar y = truth.eval(at);
      if (x == 1) y = Scalar::from_int(55, F);
      if (x == 4) y = Scalar::from_int(17, F);
      prob.points.emplace_back(xv, y);
    }
    prob.degree_bound = 2;
    prob.error_bound = 2;
    auto res = wb_decode(prob);
    REQUIRE(res.ok());
    CHECK(res.value().poly == truth);
    CHECK(res.value().corrected_indices == std::vector<size_t>{1, 4});
  }
}

TEST_CASE("wb recovery property with planted corruptions") {
  const Field F = Field::gf(101);
  Rng rng(555001);
  int failures = 0;
  for (int trial = 0; trial < 250; ++trial) {
    int d = static_cast<int>(rng.below(6));  // d <= 5
    int t = static_cast<int>(rng.below(4));  // t <= 3
    int n = 2 * t + d + 1;
    MultiPoly p(1, F);
    for (int i = 0; i <= d; ++i) {
      p.add_term({static_cast<uint32_t>(i)}, Scalar::from_int(rng.integer(0, 100), F));
    }
    WBProblem prob;
    prob.degree_bound = d;
    prob.error_bound = t;
    std::vector<size_t> victims = rng.sample(n, t);
    for (int i = 0; i < n; ++i) {
      Scalar x = Scalar::from_int(i, F);
      std::vector<Scalar> at{x};
      Scalar y = p.eval(at);
      if (std::find(victims.begin(), victims.end(), i) != victims.end()) {
        y = y + Scalar::from_int(rng.integer(1, 100), F);  // guaranteed different
      }
      prob.points.emplace_back(x, y);
    }
    auto res = wb_decode(prob);
    if (!res.ok() || res.value().poly != p) {
      ++failures;
      continue;
    }
    // flag soundness, both directions
    std::vector<size_t> disagree;
    for (int i = 0; i < n; ++i) {
      std::vector<Scalar> at{prob.points[i].first};
      if (res.value().poly.eval(at) != prob.points[i].second) {
        disagree.push_back(i);
      }
    }
    CHECK(res.value().corrected_indices == disagree);
    // output stays in the input field
    CHECK(res.value().poly.field() == F);
  }
  CHECK(failures == 0);
}

TEST_CASE("wb_decode failure paths") {
  SUBCASE("too few points is a contract violation") {
    CHECK_THROWS_AS(wb_decode(gf_problem(7, {{0, 1}, {1, 2}}, 1, 1)),
                    std::invalid_argument);
  }
  SUBCASE("duplicate x is a contract violation") {
    CHECK_THROWS_AS(
        wb_decode(gf_problem(7, {{0, 1}, {0, 2}, {1, 3}, {2, 0}}, 1, 1)),
        std::invalid_argument);
  }
  SUBCASE("more corruptions than t fails loudly") {
    const Field F = Field::gf(101);
    // truth x, four of nine points off the line but t=1
    WBProblem prob;
    for (long x = 0; x < 9; ++x) {
      long y = x;
      if (x >= 5) y = (3 * x + 40 + x * x) % 101;
      prob.points.emplace_back(Scalar::from_int(x, F), Scalar::from_int(y, F));
    }
    prob.degree_bound = 1;
    prob.error_bound = 1;
    auto res = wb_decode(prob);
    REQUIRE_FALSE(res.ok());
    CHECK((res.code() == Fail::Infeasible || res.code() == Fail::NotDivisible ||
           res.code() == Fail::TooManyErrors));
  }
}

TEST_CASE("wb_decode determinism") {
  auto prob = gf_problem(13, {{0, 5}, {1, 9}, {2, 2}, {3, 4}, {4, 8}, {5, 1}}, 2, 1);
  auto r1 = wb_decode(prob);
  auto r2 = wb_decode(prob);
  REQUIRE(r1.ok() == r2.ok());
  if (r1.ok()) {
    CHECK(r1.value().poly == r2.value().poly);
    CHECK(r1.value().error_locator == r2.value().error_locator);
    CHECK(r1.value().corrected_indices == r2.value().corrected_indices);
  }
}

TEST_CASE("noise_enumerate_fit recovers 2x over GF(11)") {
  const Field F = Field::gf(11);
  // p = 2x; 12 points, subset = first 6 (distinct x), one Byzantine point in
  // the validation half, discrete noise in {-1,0,1} elsewhere.
  std::vector<std::pair<long, long>> pts;
  auto noise = [](long i) { return (i % 3) - 1; };  // -1,0,1 pattern
  for (long i = 0; i < 12; ++i) {
    long x = i % 11;
    long y = 2 * x + noise(i);
    if (i == 8) y = 2 * x + 5;  // Byzantine
    pts.emplace_back(x, ((y % 11) + 11) % 11);
  }
  DataSet S = dataset_1d(F, pts);
  NoiseAlphabet alphabet = NoiseAlphabet::integer_band(1, F);

  // Oracle: all 121 degree-<=1 candidates against the Definition-1
  // predicate (within delta for >= 11/12 of S); assert uniqueness.
  std::vector<std::pair<long, long>> winners;
  for (long a = 0; a < 11; ++a) {
    for (long b = 0; b < 11; ++b) {
      int agree = 0;
      for (auto [x, y] : pts) {
        long diff = ((y - (a * x + b)) % 11 + 11) % 11;
        if (diff == 0 || diff == 1 || diff == 10) ++agree;
      }
      if (agree >= 11) winners.emplace_back(a, b);
    }
  }
  REQUIRE(winners.size() == 1);
  REQUIRE(winners[0] == std::pair<long, long>{2, 0});

  EnumerateOptions opts;
  opts.subset_size = 6;
  auto res = noise_enumerate_fit(S, 11.0 / 12.0, 1, alphabet, opts);
  REQUIRE(res.ok());
  CHECK(*res.value().poly == poly1(F, {0, 2}));
  CHECK(res.value().noise_vector.size() == 6);
  CHECK(res.value().wb_calls >= 1);
  // the Byzantine row is the only flagged one
  CHECK(res.value().flagged == std::vector<size_t>{8});
}

TEST_CASE("noise_enumerate_fit reduces to wb_decode with the zero alphabet") {
  const Field F = Field::gf(13);
  std::vector<std::pair<long, long>> pts;
  for (long x = 0; x < 6; ++x) pts.emplace_back(x, (3 * x + 7) % 13);
  DataSet S = dataset_1d(F, pts);
  auto res = noise_enumerate_fit(S, 1.0, 1, NoiseAlphabet::zero_only(F));
  REQUIRE(res.ok());
  CHECK(*res.value().poly == poly1(F, {7, 3}));
  CHECK(res.value().wb_calls == 1);
  for (const Scalar& v : res.value().noise_vector) CHECK(v.is_zero());
}

TEST_CASE("noise_enumerate_fit exhausts on fully corrupted data") {
  const Field F = Field::gf(11);
  // fixed garbage values, far from any line on the validation half
  std::vector<std::pair<long, long>> pts{{0, 3}, {1, 9}, {2, 4}, {3, 10},
                                         {4, 2}, {5, 8}, {6, 5}, {7, 0}};
  DataSet S = dataset_1d(F, pts);
  auto res = noise_enumerate_fit(S, 1.0, 1, NoiseAlphabet::integer_band(1, F));
  REQUIRE_FALSE(res.ok());
  CHECK(res.code() == Fail::Exhausted);
}

TEST_CASE("noise_enumerate_fit budget cap") {
  const Field F = Field::gf(11);
  std::vector<std::pair<long, long>> pts{{0, 3}, {1, 9}, {2, 4}, {3, 10},
                                         {4, 2}, {5, 8}, {6, 5}, {7, 0}};
  DataSet S = dataset_1d(F, pts);
  EnumerateOptions opts;
  opts.budget = 5;
  auto res = noise_enumerate_fit(S, 1.0, 1, NoiseAlphabet::integer_band(1, F), opts);
  REQUIRE_FALSE(res.ok());
  CHECK(res.code() == Fail::BudgetExceeded);
}

TEST_CASE("degree_search") {
  const Field Q = Field::rational();
  SUBCASE("finds the minimal degree for exact cubic data") {
    MultiPoly cubic = poly1(Q, {1, -2, 0, 1});  // x^3 - 2x + 1
    DataSet S;
    S.k = 1;
    S.field = Q;
    for (long x = 0; x < 12; ++x) {
      S.xs.push_back({Scalar::from_int(x, Q)});
      std::vector<Scalar> at{Scalar::from_int(x, Q)};
      S.zs.push_back(cubic.eval(at));
    }
    auto res = degree_search(S, 1.0, NoiseAlphabet::zero_only(Q), 8);
    REQUIRE(res.ok());
    CHECK(res.value().fitted_degree == 3);
    CHECK(*res.value().poly == cubic);
    // minimality cross-check: degree 2 really is infeasible
    auto lower = noise_enumerate_fit(S, 1.0, 2, NoiseAlphabet::zero_only(Q));
    CHECK_FALSE(lower.ok());
  }
  SUBCASE("constant data fits at degree 0") {
    DataSet S;
    S.k = 1;
    S.field = Q;
    for (long x = 0; x < 5; ++x) {
      S.xs.push_back({Scalar::from_int(x, Q)});
      S.zs.push_back(Scalar::from_int(4, Q));
    }
    auto res = degree_search(S, 1.0, NoiseAlphabet::zero_only(Q), 6);
    REQUIRE(res.ok());
    CHECK(res.value().fitted_degree == 0);
  }
  SUBCASE("random data over a tiny field fits no degree") {
    const Field F = Field::gf(5);
    // fixed pseudo-random values; the oracle below proves no fit exists
    std::vector<std::pair<long, long>> pts{{0, 2}, {1, 0}, {2, 3},
                                           {3, 3}, {4, 1}, {0, 4}};
    DataSet S = dataset_1d(F, pts);
    bool any_fit = false;
    for (long a = 0; a < 5 && !any_fit; ++a) {
      for (long b = 0; b < 5 && !any_fit; ++b) {
        for (long c = 0; c < 5 && !any_fit; ++c) {
          bool all = true;
          for (auto [x, y] : pts) {
            if ((a * x * x + b * x + c) % 5 != y) {
              all = false;
              break;
            }
          }
          any_fit = all;
        }
      }
    }
    REQUIRE_FALSE(any_fit);
    auto res = degree_search(S, 1.0, NoiseAlphabet::zero_only(F), 2);
    REQUIRE_FALSE(res.ok());
    CHECK(res.code() == Fail::NoDegreeFits);
  }
}

TEST_CASE("noise alphabet validation") {
  const Field F = Field::gf(11);
  NoiseAlphabet empty{{}, Scalar::zero(F)};
  CHECK_THROWS_AS(empty.validate(), std::invalid_argument);
  NoiseAlphabet no_zero{{Scalar::from_int(1, F)}, Scalar::from_int(1, F)};
  CHECK_THROWS_AS(no_zero.validate(), std::invalid_argument);
  NoiseAlphabet dup{{Scalar::from_int(0, F), Scalar::from_int(0, F)},
                    Scalar::from_int(0, F)};
  CHECK_THROWS_AS(dup.validate(), std::invalid_argument);
  CHECK_NOTHROW(NoiseAlphabet::integer_band(2, F).validate());
  CHECK(NoiseAlphabet::integer_band(2, F).offsets.size() == 5);
}
