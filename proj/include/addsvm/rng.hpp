#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace addsvm {

// Deterministic, portable random source. All experiment code draws through
// this wrapper so results do not depend on libstdc++'s distribution
// implementations: uniforms are built from raw mt19937_64 output, Cauchy
// variates via the inverse CDF.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0,1) with 53 bits of resolution.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Standard Cauchy via tan(pi*(U - 1/2)).
  double cauchy() {
    double u = uniform01();
    return std::tan(M_PI * (u - 0.5));
  }

  std::uint64_t next_u64() { return engine_(); }

  // splitmix64-based stream derivation, so that (seed, tag...) cells own
  // independent streams regardless of evaluation order.
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t a,
                              std::uint64_t b = 0) {
    std::uint64_t x = seed;
    auto mix = [&x](std::uint64_t v) {
      x += 0x9e3779b97f4a7c15ULL + v;
      std::uint64_t z = x;
      z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
      z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
      x = z ^ (z >> 31);
      return x;
    };
    mix(a);
    return mix(b);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace addsvm
