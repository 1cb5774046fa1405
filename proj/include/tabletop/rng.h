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

#ifndef TABLETOP_RNG_H_
#define TABLETOP_RNG_H_

#include <array>
#include <cstdint>
#include <limits>
#include <span>
#include <utility>

namespace tabletop {

using Seed = std::uint64_t;

// One step of splitmix64. Used for seeding and for deriving child seeds.
std::uint64_t SplitMix64(std::uint64_t& state);

// Mixes a base seed with a stream index into an independent child seed.
Seed DeriveSeed(Seed base, std::uint64_t stream);

// xoroshiro128++ (Blackman & Vigna). 128 bits of state, portable output.
// Bounded integers use Lemire's multiply-shift with rejection, so draws do
// not depend on the standard library's distribution implementations.
class Rng {
 public:
  using result_type = std::uint64_t;

  Rng() : Rng(0) {}
  explicit Rng(Seed seed);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }
  result_type operator()() { return Next(); }

  std::uint64_t Next();
  // Uniform in [0, bound). bound must be > 0.
  std::uint64_t UniformInt(std::uint64_t bound);
  // Uniform in [0, 1) with 53 random bits.
  double UniformDouble();
  // Standard normal via Box-Muller.
  double Normal();

  template <typename T>
  void Shuffle(std::span<T> values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      std::size_t j = UniformInt(i);
      std::swap(values[i - 1], values[j]);
    }
  }

  std::array<std::uint64_t, 2> state() const { return state_; }
  void set_state(std::array<std::uint64_t, 2> s) { state_ = s; }

  bool operator==(const Rng&) const = default;

 private:
  std::array<std::uint64_t, 2> state_;
};

}  // namespace tabletop

#endif  // TABLETOP_RNG_H_
