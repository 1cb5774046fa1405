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

#ifndef TABLETOP_GAME_H_
#define TABLETOP_GAME_H_

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "tabletop/rng.h"

namespace tabletop {

enum class GameId { kTicTacToe, kDiamant, kExplodingKittens, kLoveLetter, kStratego };

std::span<const GameId> AllGames();
std::string_view GameName(GameId game);
// Accepts the display name ("LoveLetter") case-insensitively, with or
// without separators. Throws ConfigError listing the supported games.
GameId ParseGameId(std::string_view name);

// Flat index of a leaf in the game's action tree.
using Action = int;

enum class Outcome { kWin, kTie, kLoss };
std::string_view OutcomeName(Outcome outcome);

struct GameStatus {
  bool finished = false;
  // One entry per player; empty while running.
  std::vector<Outcome> results;
};

// Authoritative state of one game instance. Concrete games derive from this
// and implement the Do* hooks; the public entry points enforce the shared
// contract (legality checks, turn counter, decision cap).
class GameState {
 public:
  virtual ~GameState() = default;

  GameId game() const { return game_; }
  int num_players() const { return num_players_; }
  int turn_counter() const { return turn_counter_; }
  int max_decisions() const { return max_decisions_; }
  const GameStatus& status() const { return status_; }
  bool is_terminal() const { return status_.finished; }

  // Player who must act. Throws TerminalStateError once finished.
  int current_player() const;

  // Ascending leaf ids. Throws TerminalStateError once finished.
  std::vector<Action> LegalActions() const;
  bool IsLegal(Action action) const;

  // Advances the state by one decision. On an illegal action the state is
  // left untouched and IllegalActionError is thrown.
  void Apply(Action action);

  std::unique_ptr<GameState> Clone() const { return DoClone(); }

  // 0 while running; +1/0/-1 for Win/Tie/Loss once finished.
  double Reward(int player) const;

  // Full canonical state (hidden information included), stable key order.
  nlohmann::json Serialize() const;
  // FNV-1a 64 over the compact dump of Serialize().
  std::uint64_t Hash() const;

  virtual std::vector<int> ObservationShape() const = 0;
  // Writes the player's view into `out`, which must hold exactly
  // product(ObservationShape()) values.
  virtual void Vectorize(int player, std::span<float> out) const = 0;
  virtual nlohmann::json ObservationJson(int player) const = 0;

  // Progress estimate in (-1, 1) from `player`'s point of view, used by the
  // one-step look-ahead agent for non-terminal successors.
  virtual double Heuristic(int /*player*/) const { return 0.0; }

  virtual std::string ActionToString(Action action) const = 0;

 protected:
  GameState(GameId game, int num_players, Seed seed, int max_decisions);
  GameState(const GameState&) = default;
  GameState& operator=(const GameState&) = default;

  virtual std::vector<Action> DoLegalActions() const = 0;
  // Default: membership in DoLegalActions().
  virtual bool DoIsLegal(Action action) const;
  virtual void DoApply(Action action) = 0;
  virtual nlohmann::json DoSerialize() const = 0;
  virtual std::unique_ptr<GameState> DoClone() const = 0;

  void Finish(std::vector<Outcome> results);
  // Unique best score wins; tied best scores tie; everyone else loses.
  void FinishByScores(std::span<const double> scores);
  void FinishAllTie();

  Rng& rng() { return rng_; }
  const Rng& rng() const { return rng_; }

  int current_player_ = 0;

 private:
  GameId game_;
  int num_players_;
  int turn_counter_ = 0;
  int max_decisions_;
  GameStatus status_;
  Rng rng_;
};

std::uint64_t Fnv1a64(std::string_view bytes);
std::string HashToHex(std::uint64_t hash);

}  // namespace tabletop

#endif  // TABLETOP_GAME_H_
