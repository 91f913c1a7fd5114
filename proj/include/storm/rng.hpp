#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace storm {

/**
 * Seeded pseudo-random source shared by all phases of a fuzzing task.
 *
 * Bounded draws are computed from the raw 64-bit engine output rather than
 * through std distributions, whose results differ between standard library
 * implementations. Replays are therefore bit-identical across platforms.
 */
class Rng
{
 public:
  explicit Rng(std::uint64_t seed) : d_engine(seed) {}

  std::uint64_t next() { return d_engine(); }

  /** Uniform integer in [0, n). n must be positive. */
  std::uint64_t below(std::uint64_t n) { return next() % n; }

  /** Uniform integer in [lo, hi]. */
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi)
  {
    return lo + below(hi - lo + 1);
  }

  /** Uniform double in [0, 1) built from the top 53 bits. */
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /** True with probability p. */
  bool chance(double p) { return unit() < p; }

 private:
  std::mt19937_64 d_engine;
};

/** splitmix64 finalizer; used to derive independent child seeds. */
constexpr std::uint64_t
mix_seed(std::uint64_t x)
{
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/** FNV-1a; stable across compilers, unlike std::hash. */
constexpr std::uint64_t
stable_hash(std::string_view s)
{
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s)
  {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::uint64_t
derive_seed(std::uint64_t master, std::string_view label)
{
  return mix_seed(master ^ mix_seed(stable_hash(label)));
}

}  // namespace storm
