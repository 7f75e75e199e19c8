#include "byzfit/scalar.hpp"

#include <array>
#include <charconv>
#include <stdexcept>

#include "byzfit/outcome.hpp"

namespace byzfit {

const char* fail_name(Fail f) {
  switch (f) {
    case Fail::Infeasible: return "Infeasible";
    case Fail::NotDivisible: return "NotDivisible";
    case Fail::TooManyErrors: return "TooManyErrors";
    case Fail::Exhausted: return "Exhausted";
    case Fail::BudgetExceeded: return "BudgetExceeded";
    case Fail::NoDegreeFits: return "NoDegreeFits";
    case Fail::InsufficientCleanData: return "InsufficientCleanData";
    case Fail::NumericalFailure: return "NumericalFailure";
    case Fail::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

namespace {

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t q) {
  return static_cast<uint64_t>((static_cast<__uint128_t>(a) * b) % q);
}

uint64_t powmod_u64(uint64_t base, uint64_t exp, uint64_t q) {
  uint64_t r = 1 % q;
  base %= q;
  while (exp) {
    if (exp & 1) r = mulmod_u64(r, base, q);
    base = mulmod_u64(base, base, q);
    exp >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                     23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // This base set is a proven deterministic witness set for n < 2^64.
  for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                     23ull, 29ull, 31ull, 37ull}) {
    uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

Field Field::gf(uint64_t q) {
  static thread_local std::array<uint64_t, 4> validated = {0, 0, 0, 0};
  for (uint64_t v : validated) {
    if (v == q) return {FieldKind::PrimeField, q};
  }
  if (!is_prime_u64(q)) {
    throw std::invalid_argument("PrimeField modulus " + std::to_string(q) +
                                " is not prime");
  }
  for (size_t i = validated.size() - 1; i > 0; --i) validated[i] = validated[i - 1];
  validated[0] = q;
  return {FieldKind::PrimeField, q};
}

std::string Field::name() const {
  switch (kind) {
    case FieldKind::Rational: return "rational";
    case FieldKind::PrimeField: return "gf";
    case FieldKind::Float64: return "float";
  }
  return "?";
}

Scalar Scalar::zero(const Field& f) { return from_int(0, f); }
Scalar Scalar::one(const Field& f) { return from_int(1, f); }

Scalar Scalar::rational(long num, long den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  mpq_class v(num, den);
  v.canonicalize();
  return Scalar(Field::rational(), std::move(v));
}

Scalar Scalar::rational(const mpq_class& v) {
  mpq_class c = v;
  c.canonicalize();
  return Scalar(Field::rational(), std::move(c));
}

Scalar Scalar::gf(uint64_t value, uint64_t modulus) {
  Field f = Field::gf(modulus);
  return Scalar(f, value % modulus);
}

Scalar Scalar::f64(double v) { return Scalar(Field::f64(), v); }

Scalar Scalar::from_int(long v, const Field& f) {
  switch (f.kind) {
    case FieldKind::Rational: return rational(v);
    case FieldKind::Float64: return f64(static_cast<double>(v));
    case FieldKind::PrimeField: {
      int64_t r = v % static_cast<int64_t>(f.modulus);
      if (r < 0) r += static_cast<int64_t>(f.modulus);
      return Scalar(f, static_cast<uint64_t>(r));
    }
  }
  throw std::logic_error("bad field kind");
}

bool Scalar::is_zero() const {
  switch (kind()) {
    case FieldKind::Rational: return std::get<mpq_class>(v_) == 0;
    case FieldKind::PrimeField: return std::get<uint64_t>(v_) == 0;
    case FieldKind::Float64: return std::get<double>(v_) == 0.0;
  }
  return false;
}

bool Scalar::is_one() const {
  switch (kind()) {
    case FieldKind::Rational: return std::get<mpq_class>(v_) == 1;
    case FieldKind::PrimeField: return std::get<uint64_t>(v_) == 1 % field_.modulus;
    case FieldKind::Float64: return std::get<double>(v_) == 1.0;
  }
  return false;
}

void Scalar::require_same(const Scalar& o) const {
  if (field_ != o.field_) {
    throw std::invalid_argument("scalar field mismatch: " + field_.name() +
                                " vs " + o.field_.name());
  }
}

Scalar Scalar::operator-() const {
  switch (kind()) {
    case FieldKind::Rational:
      return Scalar(field_, mpq_class(-std::get<mpq_class>(v_)));
    case FieldKind::Float64: return Scalar(field_, -std::get<double>(v_));
    case FieldKind::PrimeField: {
      uint64_t a = std::get<uint64_t>(v_);
      return Scalar(field_, a == 0 ? 0 : field_.modulus - a);
    }
  }
  throw std::logic_error("bad field kind");
}

Scalar Scalar::operator+(const Scalar& o) const {
  require_same(o);
  switch (kind()) {
    case FieldKind::Rational:
      return Scalar(field_,
                    mpq_class(std::get<mpq_class>(v_) + std::get<mpq_class>(o.v_)));
    case FieldKind::Float64:
      return Scalar(field_, std::get<double>(v_) + std::get<double>(o.v_));
    case FieldKind::PrimeField: {
      uint64_t q = field_.modulus;
      uint64_t a = std::get<uint64_t>(v_), b = std::get<uint64_t>(o.v_);
      uint64_t s = a + b;  // q < 2^63 not assumed; detect wrap
      if (s < a || s >= q) s -= q;
      return Scalar(field_, s);
    }
  }
  throw std::logic_error("bad field kind");
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
  require_same(o);
  switch (kind()) {
    case FieldKind::Rational:
      return Scalar(field_,
                    mpq_class(std::get<mpq_class>(v_) * std::get<mpq_class>(o.v_)));
    case FieldKind::Float64:
      return Scalar(field_, std::get<double>(v_) * std::get<double>(o.v_));
    case FieldKind::PrimeField:
      return Scalar(field_, mulmod_u64(std::get<uint64_t>(v_),
                                       std::get<uint64_t>(o.v_), field_.modulus));
  }
  throw std::logic_error("bad field kind");
}

Scalar Scalar::inverse() const {
  switch (kind()) {
    case FieldKind::Rational: {
      if (is_zero()) throw std::domain_error("inverse of rational zero");
      return Scalar(field_, mpq_class(1 / std::get<mpq_class>(v_)));
    }
    case FieldKind::Float64: return Scalar(field_, 1.0 / std::get<double>(v_));
    case FieldKind::PrimeField: {
      if (is_zero()) throw std::domain_error("inverse of zero in GF(q)");
      return Scalar(field_,
                    powmod_u64(std::get<uint64_t>(v_), field_.modulus - 2,
                               field_.modulus));
    }
  }
  throw std::logic_error("bad field kind");
}

Scalar Scalar::operator/(const Scalar& o) const {
  require_same(o);
  if (kind() == FieldKind::Float64) {
    return Scalar(field_, std::get<double>(v_) / std::get<double>(o.v_));
  }
  return *this * o.inverse();
}

Scalar Scalar::pow(uint64_t e) const {
  switch (kind()) {
    case FieldKind::PrimeField:
      return Scalar(field_, powmod_u64(std::get<uint64_t>(v_), e, field_.modulus));
    case FieldKind::Float64: {
      double r = 1.0, b = std::get<double>(v_);
      for (uint64_t k = e; k; k >>= 1, b *= b) {
        if (k & 1) r *= b;
      }
      return Scalar(field_, r);
    }
    case FieldKind::Rational: {
      mpq_class r;
      mpz_pow_ui(r.get_num_mpz_t(), std::get<mpq_class>(v_).get_num_mpz_t(), e);
      mpz_pow_ui(r.get_den_mpz_t(), std::get<mpq_class>(v_).get_den_mpz_t(), e);
      r.canonicalize();
      return Scalar(field_, std::move(r));
    }
  }
  throw std::logic_error("bad field kind");
}

bool Scalar::operator==(const Scalar& o) const {
  if (field_ != o.field_) return false;
  return v_ == o.v_;
}

const mpq_class& Scalar::rat() const {
  if (kind() != FieldKind::Rational)
    throw std::invalid_argument("scalar is not rational");
  return std::get<mpq_class>(v_);
}

uint64_t Scalar::residue() const {
  if (kind() != FieldKind::PrimeField)
    throw std::invalid_argument("scalar is not a PrimeField element");
  return std::get<uint64_t>(v_);
}

double Scalar::dbl() const {
  if (kind() != FieldKind::Float64)
    throw std::invalid_argument("scalar is not a float");
  return std::get<double>(v_);
}

double Scalar::to_double() const {
  switch (kind()) {
    case FieldKind::Rational: return std::get<mpq_class>(v_).get_d();
    case FieldKind::Float64: return std::get<double>(v_);
    case FieldKind::PrimeField: return static_cast<double>(symmetric_lift());
  }
  return 0.0;
}

int64_t Scalar::symmetric_lift() const {
  uint64_t q = field_.modulus;
  uint64_t r = residue();
  if (r <= q / 2) return static_cast<int64_t>(r);
  return static_cast<int64_t>(r) - static_cast<int64_t>(q);
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string Scalar::str() const {
  switch (kind()) {
    case FieldKind::Rational: {
      const mpq_class& r = std::get<mpq_class>(v_);
      if (r.get_den() == 1) return r.get_num().get_str();
      return r.get_num().get_str() + "/" + r.get_den().get_str();
    }
    case FieldKind::PrimeField: return std::to_string(std::get<uint64_t>(v_));
    case FieldKind::Float64: return format_double(std::get<double>(v_));
  }
  return "?";
}

}  // namespace byzfit
