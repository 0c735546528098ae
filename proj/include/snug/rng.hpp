#pragma once

#include <cmath>
#include <cstdint>

namespace snug {

// Counter-based generator (splitmix64 over a keyed counter). Every draw is a
// pure function of (seed, stream key, counter), so any point of a run can be
// reproduced without replaying the stream. This is what makes checkpoint
// resume bit-identical: no generator state needs to be serialized beyond the
// seed and the logical position.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
      : state_(mix(seed ^ 0x9e3779b97f4a7c15ull) ^ mix(stream * 0xbf58476d1ce4e5b9ull + 1)) {}

  /// Derive an independent substream, e.g. Rng(seed).fork(epoch).fork(window_id).
  Rng fork(std::uint64_t key) const {
    Rng r = *this;
    r.state_ = mix(state_ + 0x94d049bb133111ebull * (key + 1));
    r.counter_ = 0;
    return r;
  }

  std::uint64_t next_u64() {
    std::uint64_t z = state_ + 0x9e3779b97f4a7c15ull * (++counter_);
    return mix(z);
  }

  /// Uniform in [0, 1).
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  /// Box-Muller; consumes two uniforms per pair, caches the second draw.
  double normal(double mu = 0.0, double sigma = 1.0) {
    if (has_cached_) {
      has_cached_ = false;
      return mu + sigma * cached_;
    }
    double u1 = 0.0;
    do {
      u1 = next_double();
    } while (u1 <= 0.0);
    const double u2 = next_double();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    cached_ = r * std::sin(a);
    has_cached_ = true;
    return mu + sigma * (r * std::cos(a));
  }

  /// Uniform integer in [0, n).
  std::uint64_t next_below(std::uint64_t n) { return n ? next_u64() % n : 0; }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ull;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebull;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t state_ = 0;
  std::uint64_t counter_ = 0;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace snug
