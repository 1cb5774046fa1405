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

#include "tabletop/games/tic_tac_toe.h"

#include <algorithm>

namespace tabletop::tic_tac_toe {
namespace {

constexpr int kLines[8][3] = {{0, 1, 2}, {3, 4, 5}, {6, 7, 8}, {0, 3, 6},
                              {1, 4, 7}, {2, 5, 8}, {0, 4, 8}, {2, 4, 6}};

std::string CellLabel(int cell) {
  return "place(" + std::to_string(cell / kCols) + "," + std::to_string(cell % kCols) + ")";
}

}  // namespace

ActionTree BuildActionTree() {
  ActionTree tree(GameId::kTicTacToe, 2);
  for (int r = 0; r < kRows; ++r) {
    const int row = tree.AddCategory(ActionTree::kRoot, "row" + std::to_string(r));
    for (int c = 0; c < kCols; ++c) tree.AddLeaf(row, CellLabel(r * kCols + c));
  }
  return tree;
}

int LineWinner(const std::array<int, kCells>& board) {
  for (const auto& line : kLines) {
    const int a = board[line[0]];
    if (a != kEmpty && a == board[line[1]] && a == board[line[2]]) return a;
  }
  return kEmpty;
}

TicTacToeState::TicTacToeState(Seed seed)
    : GameState(GameId::kTicTacToe, 2, seed, kCells) {
  board_.fill(kEmpty);
}

std::vector<Action> TicTacToeState::DoLegalActions() const {
  std::vector<Action> out;
  out.reserve(kCells);
  for (int i = 0; i < kCells; ++i) {
    if (board_[i] == kEmpty) out.push_back(i);
  }
  return out;
}

bool TicTacToeState::DoIsLegal(Action action) const {
  return action >= 0 && action < kCells && board_[action] == kEmpty;
}

void TicTacToeState::DoApply(Action action) {
  board_[action] = current_player_;
  const int winner = LineWinner(board_);
  if (winner != kEmpty) {
    std::vector<Outcome> results(2, Outcome::kLoss);
    results[winner] = Outcome::kWin;
    Finish(std::move(results));
    return;
  }
  if (std::none_of(board_.begin(), board_.end(), [](int c) { return c == kEmpty; })) {
    FinishAllTie();
    return;
  }
  current_player_ = 1 - current_player_;
}

void TicTacToeState::Vectorize(int player, std::span<float> out) const {
  for (int i = 0; i < kCells; ++i) {
    out[i] = board_[i] == kEmpty ? 0.0f : (board_[i] == player ? 1.0f : -1.0f);
  }
}

nlohmann::json TicTacToeState::ObservationJson(int player) const {
  return {{"board", board_},
          {"to_move", is_terminal() ? -1 : current_player_},
          {"observer", player}};
}

std::string TicTacToeState::ActionToString(Action action) const {
  return CellLabel(action);
}

nlohmann::json TicTacToeState::DoSerialize() const { return {{"board", board_}}; }

}  // namespace tabletop::tic_tac_toe
