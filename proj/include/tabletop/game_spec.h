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

#ifndef TABLETOP_GAME_SPEC_H_
#define TABLETOP_GAME_SPEC_H_

#include <memory>
#include <vector>

#include "tabletop/game.h"

namespace tabletop {

// Per-(game, player count) constants. Single source of truth for shapes.
struct GameSpec {
  GameId game;
  int num_players;
  int min_players;
  int max_players;
  std::vector<int> observation_shape;
  int observation_size;
  int action_count;
  int max_decisions;
  // Informational: rough decisions per episode under random play.
  double typical_episode_length;
  bool reactive_turns;
};

// Throws ConfigError naming the game and the allowed range.
void CheckPlayerCount(GameId game, int num_players);

GameSpec GetGameSpec(GameId game, int num_players);

// Fresh running state at turn 0 with player 0 to act; all setup randomness
// is drawn from `seed`.
std::unique_ptr<GameState> NewGame(GameId game, int num_players, Seed seed);

}  // namespace tabletop

#endif  // TABLETOP_GAME_SPEC_H_
