#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "byzfit/dataset.hpp"
#include "byzfit/multipoly.hpp"

namespace byzfit {

enum class NoiseKind { None, UniformBand, DiscreteAlphabet };
enum class CorruptKind { UniformInBox, Constant, Adversarial };

// Synthetic data source: a truth polynomial, a noise rule, and a corruption
// rule, all driven by one seed. Every generated point carries a label, and
// Adversarial corruption keeps |z - f| > 2*delta so the labels stay
// unambiguous.
struct Generator {
  MultiPoly truth;

  NoiseKind noise = NoiseKind::None;
  double noise_delta = 0.0;       // UniformBand half-width (Float64 data)
  long alphabet_half_width = 0;   // DiscreteAlphabet offsets {-w..w} (exact data)

  double beta = 0.0;  // corrupted fraction in [0,1); count is ceil(beta*n)
  CorruptKind corrupt = CorruptKind::Adversarial;
  double constant_value = 0.0;
  // Adversarial offset magnitude range, in units of delta.
  double adversarial_min = 3.0;
  double adversarial_max = 6.0;

  uint64_t seed = 0;
  // Per-axis coordinate domain. Defaults: [-1,1] for Float64 data,
  // [0, max(10, n-1)] integer range for exact data.
  std::vector<std::pair<double, double>> box;

  explicit Generator(MultiPoly truth_poly) : truth(std::move(truth_poly)) {}
  void validate() const;
};

// n points, deterministic per seed. Exact-field coordinates are integers
// with distinct values on axis 0 (ascending); Float64 coordinates are
// uniform in the box. Labels and the truth polynomial ride in the metadata.
DataSet generate(const Generator& gen, size_t n);

}  // namespace byzfit
