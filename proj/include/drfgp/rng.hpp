#ifndef DRFGP_RNG_HPP
#define DRFGP_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string_view>

// Deterministic sampling helpers. std::mt19937_64 has a standardized output
// sequence, but the stdlib distributions do not, so variates are derived here
// from raw engine output to keep frozen seeds valid across toolchains.

namespace drfgp {

// Uniform double in [0, 1) using the top 53 bits of one engine draw.
inline double uniform01(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

// Standard normal via Box-Muller. Two uniforms per variate, no cached spare.
inline double standard_normal(std::mt19937_64& gen) {
  double u1;
  do {
    u1 = uniform01(gen);
  } while (u1 <= 0.0);
  const double u2 = uniform01(gen);
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Named sub-seed: master seed combined with a role tag so each consumer of
// randomness (graph draw, per-model frequencies, shuffle) gets its own stream.
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view tag,
                                 std::uint64_t index = 0) {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (char c : tag) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return splitmix64(master ^ splitmix64(h ^ (index + 1)));
}

}  // namespace drfgp

#endif  // DRFGP_RNG_HPP
