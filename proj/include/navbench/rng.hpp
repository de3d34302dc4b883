#pragma once

// Seeded random helpers. All generators in the project draw through this
// wrapper instead of std::*_distribution so that sampled values are
// identical across standard library implementations; the distributions in
// <random> leave their algorithms unspecified, which would break golden
// files and catalog hashes between toolchains.

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <stdexcept>

namespace navbench {

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Derives an independent stream seed from a base seed and a list of tags
// (module id, environment index, episode number, ...).
inline uint64_t mix_seed(uint64_t base, std::initializer_list<uint64_t> tags) {
  uint64_t s = splitmix64(base);
  for (uint64_t t : tags) s = splitmix64(s ^ t);
  return s;
}

class Rng {
 public:
  explicit Rng(uint64_t seed) : gen_(seed) {}

  uint64_t next_u64() { return gen_(); }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Uniform integer in [0, n). Rejection keeps it unbiased.
  uint64_t uniform_index(uint64_t n) {
    if (n == 0) throw std::invalid_argument("uniform_index: n must be > 0");
    const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t v;
    do {
      v = gen_();
    } while (v >= limit);
    return v % n;
  }

  int uniform_int(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(uniform_index(static_cast<uint64_t>(hi - lo + 1)));
  }

  // Standard normal via Box-Muller; two draws per call, no cached spare, so
  // the stream consumed per call is fixed.
  double gaussian() {
    double u1;
    do {
      u1 = uniform01();
    } while (u1 <= 0.0);
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
  }

  // In-place Fisher-Yates; std::shuffle is implementation-defined.
  template <typename Vec>
  void shuffle(Vec& v) {
    for (size_t i = v.size(); i > 1; --i) {
      const size_t j = static_cast<size_t>(uniform_index(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace navbench
