#pragma once

#include <cstdint>

namespace latpol {

// splitmix64: tiny, deterministic across platforms, good enough for search
// randomization. Never used where cryptographic quality would matter.
class Prng {
public:
  explicit Prng(uint64_t seed) : s_(seed) {}

  uint64_t next() {
    uint64_t z = (s_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0, n), unbiased by rejection
  uint64_t below(uint64_t n) {
    if (n == 0) return 0;
    uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return v % n;
  }

  bool coin() { return next() & 1; }

  // independent stream for a work unit; replay-stable under any scheduling
  Prng fork(uint64_t unit) const {
    Prng p(s_ ^ (0x9e3779b97f4a7c15ULL * (unit + 1)));
    p.next();
    return p;
  }

private:
  uint64_t s_;
};

}  // namespace latpol
