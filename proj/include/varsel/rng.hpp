#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "varsel/errors.hpp"

namespace varsel {

// Deterministic random generator with named substreams.
//
// Every experiment derives one Rng per independent work item from
// (seed, stream). The uniform/normal/shuffle transformations are implemented
// here rather than taken from <random>'s distributions because the standard
// leaves distribution algorithms implementation-defined; mt19937_64 itself is
// fully specified, so this class yields identical draws on every platform.
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{
        static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
        static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    engine_.seed(seq);
  }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform draw in (0, 1] with 53-bit resolution (never exactly 0, so it is
  // safe under log()).
  double uniform() {
    return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller; generates draws in pairs.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

  double normal(double mean, double sd) { return mean + sd * normal(); }

  // Unbiased integer draw in [0, bound) by rejection sampling.
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw ConfigError("Rng::below: bound must be positive");
    const std::uint64_t limit =
        std::numeric_limits<std::uint64_t>::max() / bound * bound;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

  // Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Substream used for spurious-predictor augmentation; experiment replicates
// use streams 0..reps-1, so augmentation lives in a disjoint range.
inline constexpr std::uint64_t kAugmentStream = (1ull << 63);

}  // namespace varsel
