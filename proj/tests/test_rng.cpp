#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "varsel/rng.hpp"

using varsel::Rng;

TEST_CASE("same seed and stream reproduce the identical sequence") {
  Rng a(42, 7), b(42, 7);
  for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
  Rng c(42, 7), d(42, 7);
  for (int i = 0; i < 1000; ++i) CHECK(c.normal() == d.normal());
}

TEST_CASE("different streams decorrelate") {
  Rng a(42, 0), b(42, 1);
  int equal = 0;
  for (int i = 0; i < 1000; ++i) equal += a.next_u64() == b.next_u64() ? 1 : 0;
  CHECK(equal == 0);
}

TEST_CASE("uniform lies in (0, 1]") {
  Rng rng(1, 0);
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform();
    CHECK(u > 0.0);
    CHECK(u <= 1.0);
  }
}

TEST_CASE("normal moments are near 0 and 1") {
  Rng rng(2, 0);
  const int n = 200000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal();
    sum += z;
    sum2 += z * z;
  }
  const double mean = sum / n;
  const double var = sum2 / n - mean * mean;
  CHECK(std::abs(mean) < 0.01);
  CHECK(std::abs(var - 1.0) < 0.02);
}

TEST_CASE("below stays in range and visits all values") {
  Rng rng(3, 0);
  std::vector<int> counts(10, 0);
  for (int i = 0; i < 10000; ++i) {
    const auto v = rng.below(10);
    REQUIRE(v < 10);
    ++counts[static_cast<std::size_t>(v)];
  }
  for (const int c : counts) CHECK(c > 800);  // ~1000 expected per cell
  CHECK_THROWS_AS(rng.below(0), varsel::ConfigError);
}

TEST_CASE("shuffle is a permutation and is seed-deterministic") {
  std::vector<int> v(100);
  std::iota(v.begin(), v.end(), 0);
  Rng a(9, 4);
  a.shuffle(v);
  std::vector<int> w = v;
  std::sort(w.begin(), w.end());
  for (int i = 0; i < 100; ++i) CHECK(w[static_cast<std::size_t>(i)] == i);

  std::vector<int> v2(100);
  std::iota(v2.begin(), v2.end(), 0);
  Rng b(9, 4);
  b.shuffle(v2);
  CHECK(v == v2);
}
