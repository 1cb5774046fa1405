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

#ifndef TABLETOP_OBSERVATION_H_
#define TABLETOP_OBSERVATION_H_

#include <vector>

#include "json.hpp"
#include "tabletop/game.h"

namespace tabletop {

// Fixed-shape numeric view of one player's information set. `values` is
// row-major over `shape` ({length} for card games, {27, 10, 10} for Stratego).
struct VectorObservation {
  std::vector<int> shape;
  std::vector<float> values;

  int size() const { return static_cast<int>(values.size()); }
  bool operator==(const VectorObservation&) const = default;
};

VectorObservation Vectorize(const GameState& state, int player);

// Writes into a caller-owned buffer of the right size (no allocation).
void VectorizeInto(const GameState& state, int player, std::span<float> out);

// Structured view of the same information set; per-game schemas are listed
// in docs/observations.md.
nlohmann::json ToJson(const GameState& state, int player);

}  // namespace tabletop

#endif  // TABLETOP_OBSERVATION_H_
