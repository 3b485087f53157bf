#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "portgnn/errors.hpp"

namespace portgnn {

// Deterministic random source. Wraps std::mt19937_64 but derives every value
// from raw engine words, so sequences do not depend on the standard library's
// distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  // Uniform on [0, 1) with 53-bit resolution.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Uniform integer on [lo, hi], inclusive. Rejection sampling, unbiased.
  int uniform_int(int lo, int hi) {
    if (lo > hi) throw InvalidParams("uniform_int: empty range");
    const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
    if (span == 0) return lo + static_cast<int>(next_u64());  // full 64-bit span
    const std::uint64_t reject_below = ((~std::uint64_t{0} % span) + 1) % span;
    const std::uint64_t limit = ~std::uint64_t{0} - reject_below + 1;  // multiple of span
    std::uint64_t x;
    do {
      x = next_u64();
    } while (limit != 0 && x >= limit);
    return lo + static_cast<int>(x % span);
  }

  // Fisher-Yates.
  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(uniform_int(0, static_cast<int>(i) - 1));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace portgnn
