#include "byzfit/generator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "byzfit/rng.hpp"

namespace byzfit {

void Generator::validate() const {
  if (!(beta >= 0.0 && beta < 1.0))
    throw std::invalid_argument("Generator: beta must lie in [0,1)");
  if (noise == NoiseKind::UniformBand) {
    if (!(noise_delta > 0.0))
      throw std::invalid_argument("Generator: UniformBand needs delta > 0");
    if (truth.field().kind != FieldKind::Float64)
      throw std::invalid_argument("Generator: UniformBand noise is for Float64 data");
  }
  if (noise == NoiseKind::DiscreteAlphabet) {
    if (alphabet_half_width < 0)
      throw std::invalid_argument("Generator: alphabet half-width >= 0");
    if (!truth.field().exact())
      throw std::invalid_argument("Generator: DiscreteAlphabet noise is for exact data");
  }
  if (!(adversarial_min >= 2.0))
    throw std::invalid_argument("Generator: adversarial offset floor must be >= 2*delta");
  if (!(adversarial_max >= adversarial_min))
    throw std::invalid_argument("Generator: adversarial offset range inverted");
  if (!box.empty() && box.size() != static_cast<size_t>(truth.vars()))
    throw std::invalid_argument("Generator: box dimension mismatch");
  for (const auto& [lo, hi] : box) {
    if (!(hi > lo)) throw std::invalid_argument("Generator: empty box axis");
  }
}

namespace {

double delta_of(const Generator& gen) {
  if (gen.noise == NoiseKind::UniformBand) return gen.noise_delta;
  if (gen.noise == NoiseKind::DiscreteAlphabet)
    return static_cast<double>(gen.alphabet_half_width);
  return 0.0;
}

}  // namespace

DataSet generate(const Generator& gen, size_t n) {
  gen.validate();
  const Field field = gen.truth.field();
  const int k = gen.truth.vars();
  const bool exact = field.exact();

  std::vector<std::pair<double, double>> box = gen.box;
  if (box.empty()) {
    double lo = exact ? 0.0 : -1.0;
    double hi = exact ? std::max<double>(10.0, static_cast<double>(n) - 1) : 1.0;
    box.assign(k, {lo, hi});
  }

  Rng rng(gen.seed);
  DataSet ds;
  ds.k = k;
  ds.field = field;
  ds.truth = gen.truth;
  ds.seed = gen.seed;
  ds.xs.reserve(n);
  ds.zs.reserve(n);
  ds.labels.assign(n, Label::Clean);

  // Coordinates. Axis 0 of exact data ascends 0,1,2,... (offset into the
  // box) so the WB-family distinct-coordinate precondition holds by
  // construction; over GF(q) it wraps mod q, keeping any prefix of up to q
  // points distinct (decoded subsets are prefixes).
  for (size_t i = 0; i < n; ++i) {
    std::vector<Scalar> x;
    x.reserve(k);
    for (int a = 0; a < k; ++a) {
      if (exact) {
        long lo = static_cast<long>(std::ceil(box[a].first));
        long hi = static_cast<long>(std::floor(box[a].second));
        long v = a == 0 ? lo + static_cast<long>(i) : rng.integer(lo, hi);
        x.push_back(Scalar::from_int(v, field));
      } else {
        x.push_back(Scalar::f64(rng.uniform(box[a].first, box[a].second)));
      }
    }
    ds.xs.push_back(std::move(x));
    ds.zs.push_back(gen.truth.eval(ds.xs.back()));
  }

  // Noise pass.
  if (gen.noise == NoiseKind::UniformBand) {
    for (size_t i = 0; i < n; ++i) {
      double u = rng.uniform(-gen.noise_delta, gen.noise_delta);
      ds.zs[i] = ds.zs[i] + Scalar::f64(u);
      ds.labels[i] = Label::Noisy;
    }
  } else if (gen.noise == NoiseKind::DiscreteAlphabet) {
    for (size_t i = 0; i < n; ++i) {
      long off = rng.integer(-gen.alphabet_half_width, gen.alphabet_half_width);
      if (off != 0) {
        ds.zs[i] = ds.zs[i] + Scalar::from_int(off, field);
        ds.labels[i] = Label::Noisy;
      }
    }
  }

  // Corruption pass: exactly ceil(beta*n) rows.
  size_t corrupt_count =
      static_cast<size_t>(std::ceil(gen.beta * static_cast<double>(n) - 1e-9));
  if (corrupt_count > 0) {
    std::vector<size_t> victims = rng.sample(n, corrupt_count);
    std::sort(victims.begin(), victims.end());
    const double delta = delta_of(gen);
    for (size_t i : victims) {
      Scalar f_val = gen.truth.eval(ds.xs[i]);
      switch (gen.corrupt) {
        case CorruptKind::Constant:
          ds.zs[i] = exact ? Scalar::from_int(
                                 static_cast<long>(gen.constant_value), field)
                           : Scalar::f64(gen.constant_value);
          break;
        case CorruptKind::UniformInBox: {
          if (field.kind == FieldKind::Float64) {
            ds.zs[i] = Scalar::f64(rng.uniform(-1.0, 1.0));
          } else if (field.kind == FieldKind::PrimeField) {
            ds.zs[i] = Scalar::gf(rng.below(field.modulus), field.modulus);
          } else {
            long bound = static_cast<long>(std::fabs(f_val.to_double())) + 10;
            ds.zs[i] = Scalar::from_int(rng.integer(-3 * bound, 3 * bound), field);
          }
          break;
        }
        case CorruptKind::Adversarial: {
          if (field.kind == FieldKind::Float64) {
            double floor_mag = std::max(gen.adversarial_min * delta, 1e-2);
            double hi_mag = std::max(gen.adversarial_max * delta, 2e-2);
            double mag = rng.uniform(floor_mag, hi_mag);
            double sign = rng.bits() & 1 ? 1.0 : -1.0;
            ds.zs[i] = Scalar::f64(f_val.dbl() + sign * mag);
          } else {
            long d_int = static_cast<long>(delta);
            long lo = std::max(3 * d_int, 1L);
            long hi = lo + 2 * d_int + 3;
            long mag = rng.integer(lo, hi);
            long sign = rng.bits() & 1 ? 1 : -1;
            ds.zs[i] = f_val + Scalar::from_int(sign * mag, field);
          }
          break;
        }
      }
      ds.labels[i] = Label::Corrupt;
    }
  }
  ds.validate();
  return ds;
}

}  // namespace byzfit
