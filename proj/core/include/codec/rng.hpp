#ifndef CODEC_RNG_HPP
#define CODEC_RNG_HPP

#include <cstdint>
#include <random>
#include <vector>

namespace codec {

/// splitmix64 mixing step; used to expand seeds and derive substreams.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Deterministic random source. All draws are hand-rolled on top of
/// std::mt19937_64 so that the same seed produces the same stream on every
/// standard library implementation (std::uniform_*_distribution and
/// std::shuffle make no such guarantee).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Mixes a salt into a seed to derive an independent substream.
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t state = seed ^ (0x6a09e667f3bcc909ULL + salt * 0x9e3779b97f4a7c15ULL);
    return splitmix64(state);
  }

  std::uint64_t next() { return engine_(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Uniform integer in [0, bound); rejection sampling, bound > 0.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = std::uint64_t(-1) - std::uint64_t(-1) % bound;
    std::uint64_t raw;
    do {
      raw = next();
    } while (raw >= limit);
    return raw % bound;
  }

  /// Fisher-Yates shuffle with stable draw order.
  template <typename T>
  void shuffle(std::vector<T>& values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      std::swap(values[i - 1], values[below(i)]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace codec

#endif  // CODEC_RNG_HPP
