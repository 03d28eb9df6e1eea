#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace idionet {

// splitmix64 finalizer; used to turn structured ids (base seed, controller
// index, repeat number, ...) into well-separated stream seeds.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t s0,
                                    std::uint64_t s1 = 0, std::uint64_t s2 = 0) {
  std::uint64_t h = mix64(base);
  h = mix64(h ^ s0);
  h = mix64(h ^ s1);
  h = mix64(h ^ s2);
  return h;
}

// Uniform draws with explicit mappings on top of mt19937_64. The std::
// distributions are implementation-defined, which would silently break
// byte-identical replays across toolchains, so the mappings live here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // [0, 1)
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // [lo, hi)
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // [0, n), unbiased
  int uniform_int(int n) {
    const auto span = static_cast<std::uint64_t>(n);
    const std::uint64_t limit =
        std::numeric_limits<std::uint64_t>::max() -
        std::numeric_limits<std::uint64_t>::max() % span;
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return static_cast<int>(x % span);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace idionet
