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

#ifndef TABLETOP_GAMES_TIC_TAC_TOE_H_
#define TABLETOP_GAMES_TIC_TAC_TOE_H_

#include <array>

#include "tabletop/action_space.h"
#include "tabletop/game.h"

namespace tabletop::tic_tac_toe {

inline constexpr int kRows = 3;
inline constexpr int kCols = 3;
inline constexpr int kCells = kRows * kCols;
inline constexpr int kEmpty = -1;

// Root -> row r -> cell (r, c). Leaf index = 3r + c.
ActionTree BuildActionTree();

// Board cells hold the owning player (0 or 1) or kEmpty.
// Vector observation: 9 values, +1 own mark, -1 opponent mark, 0 empty.
// JSON: {"board": [9 ints], "to_move": player or -1, "observer": player}.
class TicTacToeState : public GameState {
 public:
  explicit TicTacToeState(Seed seed);

  const std::array<int, kCells>& board() const { return board_; }

  std::vector<int> ObservationShape() const override { return {kCells}; }
  void Vectorize(int player, std::span<float> out) const override;
  nlohmann::json ObservationJson(int player) const override;
  std::string ActionToString(Action action) const override;

 protected:
  std::vector<Action> DoLegalActions() const override;
  bool DoIsLegal(Action action) const override;
  void DoApply(Action action) override;
  nlohmann::json DoSerialize() const override;
  std::unique_ptr<GameState> DoClone() const override {
    return std::make_unique<TicTacToeState>(*this);
  }

 private:
  std::array<int, kCells> board_;
};

// Winner of a board (0/1), or kEmpty when there is no completed line.
int LineWinner(const std::array<int, kCells>& board);

}  // namespace tabletop::tic_tac_toe

#endif  // TABLETOP_GAMES_TIC_TAC_TOE_H_
