#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace macsim {

/// splitmix64 step; used to hash seed material into engine seeds.
inline std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Deterministic random stream. Streams are derived from a master seed plus
/// a path of integers (p-index, sample index, restart index, ...) so that
/// every sample owns an independent generator no matter which worker runs it.
///
/// Distributions are implemented here rather than taken from <random> so that
/// the produced sequences are fully pinned by this code (libstdc++ does not
/// guarantee distribution output across versions; the engine itself is
/// standardized).
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(seed) {}

  static RngStream derive(std::uint64_t master,
                          std::initializer_list<std::uint64_t> path) {
    std::uint64_t x = master;
    std::uint64_t h = splitmix64(x);
    for (std::uint64_t p : path) {
      x ^= p + 0x9e3779b97f4a7c15ULL + (x << 6) + (x >> 2);
      h ^= splitmix64(x);
    }
    return RngStream(h);
  }

  /// Child stream; advances this stream by one draw.
  RngStream split(std::uint64_t salt) {
    std::uint64_t s = engine_() ^ (salt * 0x9e3779b97f4a7c15ULL);
    return RngStream::derive(s, {salt});
  }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1) with 53-bit resolution.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  bool bernoulli(double p) { return uniform() < p; }

  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) {
    // Lemire-style rejection-free enough for our n << 2^64; use simple
    // modulo of a 64-bit draw, bias < 2^-50 for n up to 2^13.
    return engine_() % n;
  }

  /// Standard normal via Box-Muller (no cached second value, keeps the
  /// stream position independent of call history).
  double normal() {
    double u1 = 0.0;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * M_PI * u2);
  }

  double normal(double mean, double sigma) { return mean + sigma * normal(); }

 private:
  std::mt19937_64 engine_;
};

/// Identifier recorded in run metadata so outputs are replayable.
inline const char* rng_algorithm_id() { return "splitmix64/mt19937_64"; }

}  // namespace macsim
