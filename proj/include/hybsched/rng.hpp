#pragma once

#include <cmath>
#include <cstdint>
#include <string>

namespace hybsched {

/// SplitMix64 finalizer (Steele, Lea, Flood 2014): xor-shift/multiply mixing
/// of a 64-bit word. Used both as the PRNG step and as a stream splitter so
/// every result is reproducible from the seed alone, on any platform.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// SplitMix64 generator. next() walks the counter stream; split(label) derives
/// an independent child stream, so seeding follows seed -> per-host -> per-epoch
/// without any draw-order coupling between streams.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  SplitMix64 split(std::uint64_t label) const { return SplitMix64(mix64(state_ ^ mix64(label))); }
  SplitMix64 split(const std::string& label) const { return split(fnv1a64(label)); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n), n >= 1. Rejection-free modulo is fine here:
  /// n is tiny relative to 2^64, the bias is unobservable.
  std::uint64_t below(std::uint64_t n) { return next() % n; }

  /// Standard normal via Box-Muller on two uniform draws.
  double normal() {
    double u1 = uniform();
    double u2 = uniform();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

  /// Poisson count as the number of unit-rate exponential arrivals that fit
  /// into lambda. Runs in O(lambda) draws and stays in log space, so large
  /// rates do not underflow.
  std::uint64_t poisson(double lambda) {
    if (lambda <= 0.0) return 0;
    std::uint64_t k = 0;
    double t = 0.0;
    for (;;) {
      double u = uniform();
      if (u <= 0.0) u = 0x1.0p-53;
      t += -std::log(u);
      if (t > lambda) return k;
      ++k;
    }
  }

 private:
  std::uint64_t state_;
};

}  // namespace hybsched
