#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "byzfit/scalar.hpp"

namespace byzfit {

// Finite set of admissible noise offsets (the field image of {-δ,...,+δ}).
// Must contain 0 and hold no duplicates; enumeration follows the stored
// order, so the offsets list order is part of the determinism contract.
struct NoiseAlphabet {
  std::vector<Scalar> offsets;
  Scalar delta;  // nominal half-width, same field as the offsets

  // {-half_width, ..., 0, ..., +half_width} embedded in the field,
  // in ascending integer order (2*half_width+1 offsets).
  static NoiseAlphabet integer_band(long half_width, const Field& f);
  static NoiseAlphabet zero_only(const Field& f) { return integer_band(0, f); }

  void validate() const;  // throws std::invalid_argument
  bool contains(const Scalar& v) const;
};

// "y within δ of value": over GF(q) the difference must be an alphabet
// offset (intervals are undefined on a finite field); over Rational it is
// |y - value| <= delta. Float64 uses |y - value| <= delta as well.
bool within_delta(const Scalar& y, const Scalar& value,
                  const NoiseAlphabet& alphabet);

// ceil(frac * size) with a guard against floating-point wobble on exact
// multiples; used for every rho-to-count conversion in the WB family.
size_t ceil_fraction(double frac, size_t size);

struct EnumerateOptions {
  // Size of the decoded subset S'; default is the smallest s with
  // s >= 2*ceil((1-rho_clean)*s) + d + 1.
  std::optional<size_t> subset_size;
  // Hard cap on decoder invocations (the alphabet power grows fast).
  uint64_t budget = 10'000'000;
  // When set, S' is a seeded-random subset instead of the dataset prefix.
  std::optional<uint64_t> random_subset_seed;
};

}  // namespace byzfit
