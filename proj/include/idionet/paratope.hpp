#pragma once

// Initial paratope matrices: one dedicated RNG stream per named seed, every
// cell uniform in [0.50, 0.75]. Row-major fill order is part of the replay
// contract.

#include "idionet/immune.hpp"
#include "idionet/rng.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>

namespace idionet::paratope {

inline constexpr double kInitLow = 0.50;
inline constexpr double kInitHigh = 0.75;

struct NamedSeed {
  const char* name;
  std::uint64_t seed;
};

inline constexpr std::array<NamedSeed, 3> kNamedSeeds{{
    {"D1", 1},
    {"D2", 2},
    {"D3", 3},
}};

inline std::optional<std::uint64_t> seed_for(const std::string& name) {
  for (const auto& s : kNamedSeeds)
    if (name == s.name) return s.seed;
  return std::nullopt;
}

inline immune::Matrix initial(std::uint64_t seed,
                              int antibodies = immune::kAntibodies,
                              int antigens = immune::kAntigens) {
  Rng rng(derive_seed(seed, 0x70617261746f7065ull));  // stream tag
  immune::Matrix m(antibodies, antigens);
  for (int i = 0; i < antibodies; ++i)
    for (int j = 0; j < antigens; ++j) m(i, j) = rng.uniform(kInitLow, kInitHigh);
  return m;
}

}  // namespace idionet::paratope
