#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <variant>

namespace byzfit {

// Deterministic Miller-Rabin, exact for all n < 2^64.
bool is_prime_u64(uint64_t n);

enum class FieldKind { Rational, PrimeField, Float64 };

// Computation field descriptor. PrimeField moduli are validated prime at
// construction; division requires a field.
struct Field {
  FieldKind kind = FieldKind::Rational;
  uint64_t modulus = 0;  // PrimeField only

  static Field rational() { return {FieldKind::Rational, 0}; }
  static Field gf(uint64_t q);  // throws std::invalid_argument if q not prime
  static Field f64() { return {FieldKind::Float64, 0}; }

  bool exact() const { return kind != FieldKind::Float64; }
  bool operator==(const Field&) const = default;
  std::string name() const;  // "rational" | "gf" | "float"
};

// One element of a computation field, tagged by kind. Rational values are
// kept canonical (lowest terms, positive denominator) by GMP; PrimeField
// residues live in [0, q). Arithmetic between mismatched fields throws.
class Scalar {
 public:
  Scalar() : field_(Field::rational()), v_(mpq_class(0)) {}

  static Scalar zero(const Field& f);
  static Scalar one(const Field& f);
  static Scalar rational(long num, long den = 1);
  static Scalar rational(const mpq_class& v);
  static Scalar gf(uint64_t value, uint64_t modulus);
  static Scalar f64(double v);
  // Embeds a small integer into any field (reduction mod q for PrimeField).
  static Scalar from_int(long v, const Field& f);

  const Field& field() const { return field_; }
  FieldKind kind() const { return field_.kind; }

  bool is_zero() const;
  bool is_one() const;

  Scalar operator-() const;
  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;  // throws std::domain_error on /0 (exact kinds)
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  Scalar inverse() const;
  Scalar pow(uint64_t e) const;

  // Mismatched fields compare unequal rather than throwing.
  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  const mpq_class& rat() const;
  uint64_t residue() const;
  double dbl() const;

  // Lossy numeric view: rational -> double, float -> itself,
  // PrimeField -> symmetric lift in (-q/2, q/2] as a double.
  double to_double() const;
  // PrimeField only: representative of minimal absolute value.
  int64_t symmetric_lift() const;

  // "a/b" (or bare integer), residue digits, or shortest round-trip float.
  std::string str() const;

 private:
  Scalar(Field f, std::variant<mpq_class, uint64_t, double> v)
      : field_(f), v_(std::move(v)) {}
  void require_same(const Scalar& o) const;

  Field field_;
  std::variant<mpq_class, uint64_t, double> v_;
};

// Shortest decimal form of a double that parses back bit-identically.
std::string format_double(double v);

}  // namespace byzfit
