#ifndef SPECMIX_RNG_HPP
#define SPECMIX_RNG_HPP

#include <cstdint>

namespace specmix {

// splitmix64 finalizer; the workhorse behind all seeded streams.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t mix64(std::uint64_t a, std::uint64_t b) {
  return mix64(a ^ mix64(b));
}

inline std::uint64_t mix64(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  return mix64(a ^ mix64(b ^ mix64(c)));
}

/// Counter-based stream: the n-th draw depends only on (key, n), so replicas
/// and restarts are reproducible independently of evaluation order.
class CounterStream {
public:
  explicit CounterStream(std::uint64_t key) : key_(key) {}

  std::uint64_t next_u64() { return mix64(key_, counter_++); }

  /// Uniform double in [0, 1).
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, n), n > 0.
  std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

  double next_uniform(double lo, double hi) {
    return lo + (hi - lo) * next_unit();
  }

private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace specmix

#endif
