#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <random>

namespace rangesched {

/// Seedable generator with a fully specified output sequence.
///
/// The engine is std::mt19937_64, whose output is fixed by the standard.
/// Uniform doubles use the top 53 bits of one engine output; normal
/// variates use the Marsaglia polar method on those uniforms. Neither step
/// goes through a std:: distribution, so generated topologies and jitter
/// draws are identical across standard library implementations.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1).
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Standard normal.
  double normal() {
    if (spare_) {
      const double v = *spare_;
      spare_.reset();
      return v;
    }
    double u = 0.0;
    double v = 0.0;
    double s = 0.0;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    return u * f;
  }

private:
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Derives an independent stream seed from a base seed and a path of
// indices, e.g. derive_seed(seed, {n, trial}).
constexpr std::uint64_t derive_seed(std::uint64_t base,
                                    std::initializer_list<std::uint64_t> path) {
  std::uint64_t h = mix64(base);
  for (const auto p : path) {
    h = mix64(h ^ mix64(p + 0x632be59bd9b4e019ULL));
  }
  return h;
}

} // namespace rangesched
