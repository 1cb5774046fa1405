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

#ifndef TABLETOP_GAMES_STRATEGO_H_
#define TABLETOP_GAMES_STRATEGO_H_

#include <array>
#include <string_view>

#include "tabletop/action_space.h"
#include "tabletop/game.h"

namespace tabletop::stratego {

inline constexpr int kSize = 10;
inline constexpr int kCells = kSize * kSize;
inline constexpr int kDirections = 4;  // north(-row), east(+col), south(+row), west(-col)
inline constexpr int kMaxDistance = 9;
inline constexpr int kNumActions = kCells * kDirections * kMaxDistance;
inline constexpr int kDrawDecisions = 800;
inline constexpr int kNumPlanes = 27;

enum Rank : int {
  kFlag = 0,
  kSpy,
  kScout,
  kMiner,
  kSergeant,
  kLieutenant,
  kCaptain,
  kMajor,
  kColonel,
  kGeneral,
  kMarshal,
  kBomb,
  kNumRanks
};
std::string_view RankName(int rank);

// Starting deployments, rows listed from the back row forward. Characters:
// F flag, S spy, 2..9 scout..general, M marshal, B bomb. Player 0 fills
// board rows 0..3, player 1 the mirrored rows 9..6. Each player draws one
// deployment uniformly at reset.
inline constexpr int kNumDeployments = 4;
extern const std::array<std::array<std::string_view, 4>, kNumDeployments> kDeployments;

bool IsLake(int cell);

// Leaf = (cell * 4 + direction) * 9 + (distance - 1); a regular tree
// cell -> direction -> distance with 3600 leaves.
Action EncodeMove(int cell, int direction, int distance);
struct Move {
  int cell;
  int direction;
  int distance;
};
Move DecodeMove(Action action);

ActionTree BuildActionTree();

struct Piece {
  int owner = -1;  // -1 for an empty cell
  int rank = 0;
  bool revealed = false;
  bool operator==(const Piece&) const = default;
};

// Classic 40-piece armies. Pieces step one cell orthogonally; scouts slide
// any distance over empty cells and may attack at the end of the slide.
// Combat reveals both pieces. Spy beats the marshal when attacking, miners
// defuse bombs, any other attack on a bomb loses. Capturing the flag, or
// leaving the opponent without a move, wins. 800 decisions without a result
// is a draw. The two-square repetition rule is not enforced.
//
// Observation: 27 planes of 10x10 in board coordinates, from the observer's
// side: planes 0-11 own piece of each rank, 12 own piece already revealed,
// 13-24 opponent piece of each rank once revealed by combat, 25 unrevealed
// opponent piece, 26 lake.
class StrategoState : public GameState {
 public:
  explicit StrategoState(Seed seed);

  const std::array<Piece, kCells>& board() const { return board_; }
  int deployment(int player) const { return deployment_[player]; }

  void SetPieceForTesting(int cell, Piece piece) { board_[cell] = piece; }

  std::vector<int> ObservationShape() const override { return {kNumPlanes, kSize, kSize}; }
  void Vectorize(int player, std::span<float> out) const override;
  nlohmann::json ObservationJson(int player) const override;
  double Heuristic(int player) const override;
  std::string ActionToString(Action action) const override;

 protected:
  std::vector<Action> DoLegalActions() const override;
  bool DoIsLegal(Action action) const override;
  void DoApply(Action action) override;
  nlohmann::json DoSerialize() const override;
  std::unique_ptr<GameState> DoClone() const override {
    return std::make_unique<StrategoState>(*this);
  }

 private:
  bool HasMove(int player) const;
  // Destination cell if the move is legal for `player`, else -1.
  int Destination(int player, int cell, int direction, int distance) const;

  std::array<Piece, kCells> board_;
  std::array<int, 2> deployment_{};
};

}  // namespace tabletop::stratego

#endif  // TABLETOP_GAMES_STRATEGO_H_
