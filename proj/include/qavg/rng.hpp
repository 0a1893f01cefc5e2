#pragma once

#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

namespace qavg {

/// Deterministic RNG for experiment sweeps. mt19937_64 output is pinned by
/// the standard, and the bounded draw below avoids
/// std::uniform_int_distribution (whose mapping is implementation-defined),
/// so seeded runs reproduce byte-identically across platforms.
class DetRng {
 public:
  explicit DetRng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  /// Uniform draw in [0, n) by rejection.
  std::uint64_t below(std::uint64_t n) {
    if (n <= 1) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return v % n;
  }

  /// Uniform draw in [lo, hi] inclusive.
  std::uint64_t in_range(std::uint64_t lo, std::uint64_t hi) {
    return lo + below(hi - lo + 1);
  }

  /// Uniform double in [0, 1).
  double unit() { return double(next() >> 11) * 0x1.0p-53; }

  /// Uniform double in [-1, 1).
  double symmetric_unit() { return 2.0 * unit() - 1.0; }

  /// First `count` entries of a Fisher-Yates shuffle of [0, n).
  std::vector<std::size_t> sample_indices(std::size_t n, std::size_t count) {
    if (count > n) count = n;
    std::vector<std::size_t> v(n);
    std::iota(v.begin(), v.end(), std::size_t{0});
    for (std::size_t i = 0; i < count; ++i) {
      const std::size_t j = i + std::size_t(below(n - i));
      std::swap(v[i], v[j]);
    }
    v.resize(count);
    return v;
  }

 private:
  std::mt19937_64 eng_;
};

/// Mixes experiment coordinates into one stream seed (splitmix64 finalizer)
/// so each (seed, cell) pair gets an independent deterministic stream.
inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b = 0,
                              std::uint64_t c = 0, std::uint64_t d = 0) {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL;
  for (std::uint64_t x : {a, b, c, d}) {
    h += x + 0x9e3779b97f4a7c15ULL;
    h ^= h >> 30;
    h *= 0xbf58476d1ce4e5b9ULL;
    h ^= h >> 27;
    h *= 0x94d049bb133111ebULL;
    h ^= h >> 31;
  }
  return h;
}

}  // namespace qavg
