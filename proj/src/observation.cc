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

#include "tabletop/observation.h"

#include <functional>
#include <numeric>
#include <stdexcept>

#include "tabletop/errors.h"

namespace tabletop {
namespace {

void CheckPlayer(const GameState& state, int player) {
  if (player < 0 || player >= state.num_players()) {
    throw std::out_of_range("observer " + std::to_string(player) + " outside [0, " +
                            std::to_string(state.num_players()) + ")");
  }
}

}  // namespace

VectorObservation Vectorize(const GameState& state, int player) {
  CheckPlayer(state, player);
  VectorObservation obs;
  obs.shape = state.ObservationShape();
  obs.values.resize(std::accumulate(obs.shape.begin(), obs.shape.end(), 1, std::multiplies<>()));
  state.Vectorize(player, obs.values);
  return obs;
}

void VectorizeInto(const GameState& state, int player, std::span<float> out) {
  CheckPlayer(state, player);
  const std::vector<int> shape = state.ObservationShape();
  const int size = std::accumulate(shape.begin(), shape.end(), 1, std::multiplies<>());
  if (static_cast<int>(out.size()) != size) {
    throw ShapeError("observation buffer holds " + std::to_string(out.size()) + " values, need " +
                     std::to_string(size));
  }
  state.Vectorize(player, out);
}

nlohmann::json ToJson(const GameState& state, int player) {
  CheckPlayer(state, player);
  nlohmann::json doc = state.ObservationJson(player);
  doc["game"] = GameName(state.game());
  doc["finished"] = state.is_terminal();
  return doc;
}

}  // namespace tabletop
