#pragma once

#include <cstdint>
#include <vector>

namespace cosetmac {

// Counter-based generator: the stream for (seed, stream_id) is independent of
// which thread consumes it, so fan-out over workers never changes results.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
      : state_(mix(seed ^ mix(stream * 0x9e3779b97f4a7c15ull + 1))) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    return mix(state_);
  }

  // Unbiased integer in [0, m), m >= 1.
  std::uint64_t next_below(std::uint64_t m) {
    if (m <= 1) return 0;
    const std::uint64_t lim = UINT64_MAX - UINT64_MAX % m;
    std::uint64_t v = next_u64();
    while (v >= lim) v = next_u64();
    return v % m;
  }

  double next_unit() { return (next_u64() >> 11) * 0x1.0p-53; }

  // Index into a pmf given as cumulative-free probabilities.
  int next_categorical(const double* p, int n) {
    double u = next_unit();
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
      acc += p[i];
      if (u < acc) return i;
    }
    return n - 1;
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ull;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebull;
    z ^= z >> 31;
    return z;
  }
  std::uint64_t state_;
};

}  // namespace cosetmac
