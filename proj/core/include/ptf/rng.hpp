#pragma once

#include <cstdint>

namespace ptf::rng {

// splitmix64 finalizer; the workhorse behind all counter-based streams.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Stateless hash of (seed, stream, counter). Every random draw in the
/// project is keyed this way so runs are reproducible and parallel workers
/// never need to coordinate.
constexpr std::uint64_t at(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) noexcept {
  return splitmix64(splitmix64(seed ^ 0x6a09e667f3bcc908ULL) + splitmix64(stream) + counter * 0x9e3779b97f4a7c15ULL);
}

/// Sequential convenience wrapper over the counter-based generator.
class Stream {
 public:
  constexpr Stream(std::uint64_t seed, std::uint64_t stream) noexcept : seed_(seed), stream_(stream) {}

  constexpr std::uint64_t next_u64() noexcept { return at(seed_, stream_, counter_++); }

  /// Uniform double in [0, 1).
  double next_double() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound) noexcept {
    // Bounds here are tiny (coordinates, chain indices); modulo bias is
    // far below anything observable.
    return next_u64() % bound;
  }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * next_double(); }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
};

}  // namespace ptf::rng
