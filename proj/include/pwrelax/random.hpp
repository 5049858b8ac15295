#ifndef PWRELAX_RANDOM_HPP
#define PWRELAX_RANDOM_HPP

#include <cstdint>
#include <random>

namespace pwrelax {

// mt19937_64 with distribution code spelled out so that sequences do not
// depend on the standard library implementation.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }
  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // Uniform integer in [lo, hi].
  long long integer(long long lo, long long hi) {
    auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<long long>(gen_());
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t x;
    do {
      x = gen_();
    } while (x >= limit);
    return lo + static_cast<long long>(x % span);
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace pwrelax

#endif
