#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>

namespace jointboost {

/// SplitMix64 step, used to derive independent sub-stream seeds.
std::uint64_t split_mix64(std::uint64_t x);

/// Deterministic seed for a named sub-stream of a base seed.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream, std::uint64_t substream = 0);

/// Random draws on top of std::mt19937_64 with explicit inverse-transform /
/// Box-Muller mappings, so identical seeds give identical streams on every
/// platform (std:: distributions are implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  /// Uniform on [0, 1) with 53-bit resolution.
  double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Uniform integer on {lo, ..., hi} inclusive.
  int uniform_int(int lo, int hi) {
    const int span = hi - lo + 1;
    int k = static_cast<int>(uniform01() * span);
    if (k >= span) k = span - 1;
    return lo + k;
  }

  double normal(double mean = 0.0, double sd = 1.0) {
    // Basic Box-Muller; draws two uniforms per variate, cos branch only.
    const double u1 = 1.0 - uniform01();  // in (0, 1]
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    return mean + sd * r * std::cos(6.283185307179586476925286766559 * u2);
  }

 private:
  std::mt19937_64 eng_;
};

struct ScalarMax {
  double x = 0.0;
  double fx = 0.0;
  int evaluations = 0;
};

/// Maximizes f over [lo, hi] with Brent's golden-section / parabolic
/// interpolation hybrid, stopping at absolute x-tolerance xtol. Throws
/// numeric_error if f evaluates non-finite anywhere it is probed.
ScalarMax maximize_scalar(const std::function<double(double)>& f, double lo, double hi,
                          double xtol, int max_iter = 200);

}  // namespace jointboost
