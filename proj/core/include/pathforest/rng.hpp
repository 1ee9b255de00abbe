#pragma once

#include <cmath>
#include <cstdint>

namespace pathforest {

// Counter-based generator built on the splitmix64 finalizer.
//
// Output i of a stream with key k is mix(k + (i+1)*GOLDEN), so the sequence
// is a pure function of (key, counter) and is identical on every platform.
// Stream splitting: substream(j) derives a decorrelated child key, so
// ensembles can be generated in parallel and still replayed exactly.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : key_(mix(seed ^ 0x1405C5A1EB84D3B5ull)) {}

  std::uint64_t next() { return mix(key_ + (++counter_) * kGolden); }

  /// Independent child stream; does not advance this stream.
  CounterRng substream(std::uint64_t stream) const {
    CounterRng child(0);
    child.key_ = mix(key_ ^ mix(0x9E6C63D0876A3F35ull + stream * kGolden));
    child.counter_ = 0;
    return child;
  }

  /// Uniform on [0,1), 53-bit resolution.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform on (0,1]; safe as a log() argument.
  double uniform01_open() {
    return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  double exponential() { return -std::log(uniform01_open()); }

  /// Standard normal via Box-Muller, second value cached.
  double gaussian() {
    if (has_cached_) {
      has_cached_ = false;
      return cached_;
    }
    const double u1 = uniform01_open();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * 3.14159265358979323846 * u2;
    cached_ = r * std::sin(theta);
    has_cached_ = true;
    return r * std::cos(theta);
  }

 private:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace pathforest
