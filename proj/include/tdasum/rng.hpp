#ifndef TDASUM_RNG_HPP
#define TDASUM_RNG_HPP

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

namespace tdasum {

// Counter-based generator built on the splitmix64 bijection. A stream is
// identified by (seed, stream); draw i of a stream is a pure function of
// (seed, stream, i), so independent streams can be consumed in any order
// and results do not depend on scheduling.
//
// Layout used by the generators in this project:
//   stix:  stick i uses stream 2i for its endpoints (x1, y1, x2, y2 in that
//          order) and stream 2i+1 for its width draw.
//   gland: point i uses stream i (mixture coin first, then the coordinates).
//   bootstrap / permutation / experiment replicates: replicate j uses a
//          stream derived from (seed, j).

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Mixes a seed with stream coordinates into a new 64-bit key.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0,
                              std::uint64_t c = 0) {
  std::uint64_t k = splitmix64(seed ^ 0x6A09E667F3BCC909ULL);
  k = splitmix64(k ^ splitmix64(a + 0x1ULL));
  k = splitmix64(k ^ splitmix64(b + 0x2ULL));
  k = splitmix64(k ^ splitmix64(c + 0x3ULL));
  return k;
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
      : key_(mix_seed(seed, stream)), counter_(0) {}

  std::uint64_t next_u64() { return splitmix64(key_ + 0x9E3779B97F4A7C15ULL * ++counter_); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n). n must be positive.
  std::uint64_t uniform_index(std::uint64_t n) { return next_u64() % n; }

  /// Standard normal via Box-Muller; consumes exactly two uniforms.
  double normal() {
    double u1 = uniform();
    double u2 = uniform();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

  /// Gamma(shape, scale) by Marsaglia-Tsang squeeze; shape > 0.
  double gamma(double shape, double scale) {
    if (shape < 1.0) {
      const double u = uniform();
      return gamma(shape + 1.0, scale) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x = normal();
      double v = 1.0 + c * x;
      if (v <= 0.0) continue;
      v = v * v * v;
      const double u = uniform();
      if (u < 1.0 - 0.0331 * x * x * x * x) return scale * d * v;
      if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return scale * d * v;
    }
  }

  /// Chi-squared with (possibly non-integer) df degrees of freedom.
  double chi_squared(double df) { return gamma(0.5 * df, 2.0); }

  /// Fisher-Yates shuffle of indices 0..n-1, written into out.
  template <typename Index>
  void shuffle_indices(std::vector<Index>& out, std::size_t n) {
    out.resize(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<Index>(i);
    for (std::size_t i = n; i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(uniform_index(i));
      std::swap(out[i - 1], out[j]);
    }
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_;
};

}  // namespace tdasum

#endif
