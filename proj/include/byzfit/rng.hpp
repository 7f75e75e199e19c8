#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace byzfit {

// Deterministic draws on top of mt19937_64 (whose output sequence is fixed
// by the standard). The bit-to-value mappings live here so results never
// depend on library-specific distribution internals.
class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(seed) {}

  uint64_t bits() { return eng_(); }

  uint64_t below(uint64_t n) { return n == 0 ? 0 : bits() % n; }

  double unit() {  // [0, 1)
    return static_cast<double>(bits() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

  long integer(long lo, long hi) {  // inclusive bounds
    return lo + static_cast<long>(below(static_cast<uint64_t>(hi - lo + 1)));
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[below(i)]);
    }
  }

  std::vector<size_t> sample(size_t n, size_t k) {
    std::vector<size_t> idx(n);
    for (size_t i = 0; i < n; ++i) idx[i] = i;
    shuffle(idx);
    idx.resize(std::min(n, k));
    return idx;
  }

 private:
  std::mt19937_64 eng_;
};

// Halton low-discrepancy value in (0,1) for index >= 1.
inline double halton(uint64_t index, uint32_t base) {
  double f = 1.0, r = 0.0;
  while (index > 0) {
    f /= base;
    r += f * static_cast<double>(index % base);
    index /= base;
  }
  return r;
}

}  // namespace byzfit
