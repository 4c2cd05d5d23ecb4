#ifndef JALE_RNG_HPP
#define JALE_RNG_HPP

#include <cstdint>
#include <string_view>

namespace jale {

// SplitMix64. Used everywhere randomness is needed so that results are
// reproducible across platforms and standard libraries.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform in [lo, hi).
  double next_range(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

  // Uniform in {0, ..., n-1}; n must be positive.
  uint64_t next_below(uint64_t n) { return next() % n; }

 private:
  uint64_t state_;
};

inline uint64_t mix_u64(uint64_t x) {
  x ^= x >> 33;
  x *= 0xff51afd7ed558ccdULL;
  x ^= x >> 33;
  x *= 0xc4ceb9fe1a85ec53ULL;
  x ^= x >> 33;
  return x;
}

inline uint64_t hash_combine(uint64_t a, uint64_t b) {
  return mix_u64(a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2)));
}

inline uint64_t fnv1a64(std::string_view text) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Stream seed for parallel work item `index` under master `seed`; streams are
// independent of scheduling order.
inline uint64_t derive_stream(uint64_t seed, uint64_t index) {
  return hash_combine(mix_u64(seed), index + 1);
}

}  // namespace jale

#endif
