// geodyn - seeded deterministic random number generator for sample points.
//
// splitmix64 with the usual constants (0x9E3779B97F4A7C15 increment,
// 0xBF58476D1CE4E5B9 / 0x94D049BB133111EB mixers).  Chosen so that a given
// seed reproduces the same sample stream on every platform.

#ifndef GEODYN_RNG_HPP
#define GEODYN_RNG_HPP

#include <cstdint>

namespace geodyn {

class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1), 53-bit resolution.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

 private:
  std::uint64_t state_;
};

}  // namespace geodyn

#endif
