// Copyright 2026 The Tabletop Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <numeric>
#include <set>

#include "doctest.h"
#include "tabletop/rng.h"

using tabletop::DeriveSeed;
using tabletop::Rng;

TEST_SUITE("rng") {
  TEST_CASE("same seed gives the same stream") {
    Rng a(42), b(42), c(43);
    bool differs = false;
    for (int i = 0; i < 100; ++i) {
      const auto x = a.Next();
      CHECK(x == b.Next());
      differs |= x != c.Next();
    }
    CHECK(differs);
  }

  TEST_CASE("state round-trips") {
    Rng a(7);
    a.Next();
    Rng b;
    b.set_state(a.state());
    CHECK(a == b);
    CHECK(a.Next() == b.Next());
  }

  TEST_CASE("derived seeds are distinct") {
    std::set<tabletop::Seed> seen;
    for (std::uint64_t base = 0; base < 20; ++base) {
      for (std::uint64_t stream = 0; stream < 50; ++stream) seen.insert(DeriveSeed(base, stream));
    }
    CHECK(seen.size() == 1000);
  }

  TEST_CASE("bounded integers are in range and unbiased") {
    Rng rng(1);
    constexpr int kBins = 7;
    constexpr int kDraws = 70000;
    std::array<int, kBins> counts{};
    for (int i = 0; i < kDraws; ++i) {
      const auto x = rng.UniformInt(kBins);
      REQUIRE(x < kBins);
      ++counts[x];
    }
    // Chi-square with 6 degrees of freedom; 22.46 is the 0.999 quantile.
    const double expected = static_cast<double>(kDraws) / kBins;
    double chi2 = 0.0;
    for (int c : counts) chi2 += (c - expected) * (c - expected) / expected;
    CHECK(chi2 < 22.46);
  }

  TEST_CASE("uniform doubles and normals have the right moments") {
    Rng rng(3);
    constexpr int kDraws = 200000;
    double sum = 0.0, sum_n = 0.0, sum_n2 = 0.0;
    for (int i = 0; i < kDraws; ++i) {
      const double u = rng.UniformDouble();
      REQUIRE(u >= 0.0);
      REQUIRE(u < 1.0);
      sum += u;
      const double z = rng.Normal();
      sum_n += z;
      sum_n2 += z * z;
    }
    CHECK(sum / kDraws == doctest::Approx(0.5).epsilon(0.01));
    CHECK(std::abs(sum_n / kDraws) < 0.01);
    CHECK(sum_n2 / kDraws == doctest::Approx(1.0).epsilon(0.02));
  }

  TEST_CASE("shuffle is a permutation and every position is reachable") {
    Rng rng(5);
    std::array<std::array<int, 5>, 5> where{};
    for (int trial = 0; trial < 5000; ++trial) {
      std::array<int, 5> v{0, 1, 2, 3, 4};
      rng.Shuffle(std::span<int>(v));
      std::array<int, 5> sorted = v;
      std::sort(sorted.begin(), sorted.end());
      REQUIRE(sorted == std::array<int, 5>{0, 1, 2, 3, 4});
      for (int pos = 0; pos < 5; ++pos) ++where[v[pos]][pos];
    }
    for (const auto& row : where) {
      for (int c : row) CHECK(c > 800);  // expectation 1000
    }
  }
}
