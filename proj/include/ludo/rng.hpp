#pragma once

#include <cstdint>
#include <random>
#include <string>

namespace ludo {

/// Seedable deterministic random source used for dice, the random agent and
/// corpus generation. Bounded draws use rejection sampling on raw 64-bit
/// outputs because std::uniform_int_distribution is implementation-defined
/// and would break transcript replay across toolchains. The algorithm name
/// is recorded in run manifests.
class Rng {
 public:
  static constexpr const char* kAlgorithm = "mt19937_64";

  explicit Rng(uint64_t seed) : gen_(seed) {}

  uint64_t next_u64() { return gen_(); }

  /// Uniform integer in [lo, hi], inclusive.
  int uniform_int(int lo, int hi) {
    const uint64_t range = static_cast<uint64_t>(hi) - static_cast<uint64_t>(lo) + 1;
    const uint64_t limit = UINT64_MAX - UINT64_MAX % range;
    uint64_t x = gen_();
    while (x >= limit) x = gen_();
    return lo + static_cast<int>(x % range);
  }

  int roll_dice() { return uniform_int(1, 6); }

  bool chance(double p) {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53 < p;
  }

 private:
  std::mt19937_64 gen_;
};

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Deterministic per-stream seed derivation from a master seed. Used so
/// games within a tournament and spots within an eval run draw from
/// independent, reproducible streams.
inline uint64_t derive_seed(uint64_t master, uint64_t stream, uint64_t index) {
  return splitmix64(splitmix64(master ^ (0x6c62272e07bb0142ULL + stream)) ^ index);
}

/// Stable 64-bit FNV-1a string hash (std::hash is not stable across builds).
inline uint64_t fnv1a64(const std::string& s) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace ludo
