#pragma once

#include <cstdint>

namespace convalg {

// Deterministic 64-bit generator (splitmix64). Law-check sampling must be
// reproducible across platforms, so we avoid std:: distributions whose
// output is implementation-defined.
class Rng {
public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n). n must be > 0; modulo bias is irrelevant at our scales.
  uint64_t below(uint64_t n) { return next() % n; }

  int index(int n) { return static_cast<int>(below(static_cast<uint64_t>(n))); }

  bool coin() { return (next() & 1) != 0; }

  // Uniform double in [0, 1).
  double real() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double real_in(double lo, double hi) { return lo + (hi - lo) * real(); }

private:
  uint64_t state_;
};

inline constexpr uint64_t kDefaultSeed = 0xC0FFEE;

} // namespace convalg
