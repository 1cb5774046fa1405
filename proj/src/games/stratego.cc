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

#include "tabletop/games/stratego.h"

#include "tabletop/errors.h"

namespace tabletop::stratego {
namespace {

constexpr std::array<std::string_view, kNumRanks> kRankNames = {
    "flag",    "spy",    "scout",   "miner",   "sergeant", "lieutenant",
    "captain", "major",  "colonel", "general", "marshal",  "bomb"};
constexpr std::array<const char*, kDirections> kDirectionNames = {"north", "east", "south",
                                                                  "west"};
constexpr int kRowStep[kDirections] = {-1, 0, 1, 0};
constexpr int kColStep[kDirections] = {0, 1, 0, -1};

// Rough piece values for the look-ahead heuristic.
constexpr std::array<double, kNumRanks> kMaterial = {0, 3, 1, 2, 2, 3, 4, 5, 6, 8, 10, 2};

int RankFromChar(char c) {
  switch (c) {
    case 'F': return kFlag;
    case 'S': return kSpy;
    case 'M': return kMarshal;
    case 'B': return kBomb;
    default: return c - '0';
  }
}

bool Movable(int rank) { return rank != kFlag && rank != kBomb; }

double ArmyMaterial();

std::string MoveLabel(const Move& m) {
  return "move(r" + std::to_string(m.cell / kSize) + "c" + std::to_string(m.cell % kSize) + "," +
         kDirectionNames[m.direction] + "," + std::to_string(m.distance) + ")";
}

}  // namespace

const std::array<std::array<std::string_view, 4>, kNumDeployments> kDeployments = {{
    {"3BFB445B32", "B5B6376245", "2768S92736", "22M528432B"},
    {"BFB3452B34", "2B43756B26", "5768S9B732", "2M58264232"},
    {"4B32FB5B43", "3B2B675462", "278S269735", "2M52B48326"},
    {"B3BF4B2354", "6B5B473B22", "7S86297235", "26M5264832"},
}};

namespace {

double ArmyMaterial() {
  double total = 0.0;
  for (std::string_view row : kDeployments[0]) {
    for (char c : row) total += kMaterial[RankFromChar(c)];
  }
  return total;
}

}  // namespace

std::string_view RankName(int rank) { return kRankNames.at(rank); }

bool IsLake(int cell) {
  const int r = cell / kSize;
  const int c = cell % kSize;
  return (r == 4 || r == 5) && (c == 2 || c == 3 || c == 6 || c == 7);
}

Action EncodeMove(int cell, int direction, int distance) {
  return (cell * kDirections + direction) * kMaxDistance + distance - 1;
}

Move DecodeMove(Action action) {
  return Move{action / (kDirections * kMaxDistance), (action / kMaxDistance) % kDirections,
              action % kMaxDistance + 1};
}

ActionTree BuildActionTree() {
  ActionTree tree(GameId::kStratego, 2);
  for (int cell = 0; cell < kCells; ++cell) {
    const int cat = tree.AddCategory(ActionTree::kRoot, "r" + std::to_string(cell / kSize) + "c" +
                                                            std::to_string(cell % kSize));
    for (int d = 0; d < kDirections; ++d) {
      const int dir = tree.AddCategory(cat, kDirectionNames[d]);
      for (int dist = 1; dist <= kMaxDistance; ++dist) {
        tree.AddLeaf(dir, MoveLabel({cell, d, dist}));
      }
    }
  }
  return tree;
}

StrategoState::StrategoState(Seed seed)
    : GameState(GameId::kStratego, 2, seed, kDrawDecisions) {
  for (int player = 0; player < 2; ++player) {
    deployment_[player] = static_cast<int>(rng().UniformInt(kNumDeployments));
    const auto& rows = kDeployments[deployment_[player]];
    for (int r = 0; r < 4; ++r) {
      const int row = player == 0 ? r : kSize - 1 - r;
      for (int c = 0; c < kSize; ++c) {
        board_[row * kSize + c] = Piece{player, RankFromChar(rows[r][c]), false};
      }
    }
  }
}

int StrategoState::Destination(int player, int cell, int direction, int distance) const {
  const Piece& piece = board_[cell];
  if (piece.owner != player || !Movable(piece.rank)) return -1;
  if (distance > 1 && piece.rank != kScout) return -1;
  int r = cell / kSize;
  int c = cell % kSize;
  for (int k = 1; k <= distance; ++k) {
    r += kRowStep[direction];
    c += kColStep[direction];
    if (r < 0 || r >= kSize || c < 0 || c >= kSize) return -1;
    const int to = r * kSize + c;
    if (IsLake(to)) return -1;
    const Piece& occupant = board_[to];
    if (k < distance) {
      if (occupant.owner != -1) return -1;
    } else if (occupant.owner == player) {
      return -1;
    }
  }
  return r * kSize + c;
}

std::vector<Action> StrategoState::DoLegalActions() const {
  std::vector<Action> out;
  const int player = current_player_;
  for (int cell = 0; cell < kCells; ++cell) {
    const Piece& piece = board_[cell];
    if (piece.owner != player || !Movable(piece.rank)) continue;
    const int reach = piece.rank == kScout ? kMaxDistance : 1;
    for (int d = 0; d < kDirections; ++d) {
      for (int dist = 1; dist <= reach; ++dist) {
        const int to = Destination(player, cell, d, dist);
        if (to < 0) break;
        out.push_back(EncodeMove(cell, d, dist));
        if (board_[to].owner != -1) break;
      }
    }
  }
  return out;
}

bool StrategoState::DoIsLegal(Action action) const {
  if (action < 0 || action >= kNumActions) return false;
  const Move m = DecodeMove(action);
  return Destination(current_player_, m.cell, m.direction, m.distance) >= 0;
}

bool StrategoState::HasMove(int player) const {
  for (int cell = 0; cell < kCells; ++cell) {
    for (int d = 0; d < kDirections; ++d) {
      if (Destination(player, cell, d, 1) >= 0) return true;
    }
  }
  return false;
}

void StrategoState::DoApply(Action action) {
  const int player = current_player_;
  const Move m = DecodeMove(action);
  const int to = Destination(player, m.cell, m.direction, m.distance);
  Piece attacker = board_[m.cell];
  board_[m.cell] = Piece{};
  Piece defender = board_[to];
  bool flag_taken = false;
  if (defender.owner == -1) {
    board_[to] = attacker;
  } else {
    attacker.revealed = true;
    defender.revealed = true;
    if (defender.rank == kFlag) {
      board_[to] = attacker;
      flag_taken = true;
    } else if (defender.rank == kBomb) {
      board_[to] = attacker.rank == kMiner ? attacker : defender;
    } else if (attacker.rank == kSpy && defender.rank == kMarshal) {
      board_[to] = attacker;
    } else if (attacker.rank > defender.rank) {
      board_[to] = attacker;
    } else if (attacker.rank < defender.rank) {
      board_[to] = defender;
    } else {
      board_[to] = Piece{};
    }
  }
  if (flag_taken || !HasMove(1 - player)) {
    std::vector<Outcome> results(2, Outcome::kLoss);
    results[player] = Outcome::kWin;
    Finish(std::move(results));
    return;
  }
  current_player_ = 1 - player;
}

void StrategoState::Vectorize(int player, std::span<float> out) const {
  std::fill(out.begin(), out.end(), 0.0f);
  auto plane = [&](int p, int cell) -> float& { return out[p * kCells + cell]; };
  for (int cell = 0; cell < kCells; ++cell) {
    if (IsLake(cell)) plane(26, cell) = 1.0f;
    const Piece& piece = board_[cell];
    if (piece.owner == -1) continue;
    if (piece.owner == player) {
      plane(piece.rank, cell) = 1.0f;
      if (piece.revealed) plane(12, cell) = 1.0f;
    } else if (piece.revealed) {
      plane(13 + piece.rank, cell) = 1.0f;
    } else {
      plane(25, cell) = 1.0f;
    }
  }
}

nlohmann::json StrategoState::ObservationJson(int player) const {
  nlohmann::json cells = nlohmann::json::array();
  for (int cell = 0; cell < kCells; ++cell) {
    const Piece& piece = board_[cell];
    if (IsLake(cell)) {
      cells.push_back("lake");
    } else if (piece.owner == -1) {
      cells.push_back("");
    } else if (piece.owner == player) {
      cells.push_back("own:" + std::string(kRankNames[piece.rank]) + (piece.revealed ? "*" : ""));
    } else {
      cells.push_back(piece.revealed ? "opp:" + std::string(kRankNames[piece.rank]) : "opp:?");
    }
  }
  return {{"observer", player},
          {"cells", std::move(cells)},
          {"to_move", is_terminal() ? -1 : current_player_}};
}

double StrategoState::Heuristic(int player) const {
  static const double kArmy = ArmyMaterial();
  const double hidden_value = kArmy / 40.0;
  double own = 0.0;
  double opponent = 0.0;
  for (const Piece& piece : board_) {
    if (piece.owner == player) {
      own += kMaterial[piece.rank];
    } else if (piece.owner != -1) {
      opponent += piece.revealed ? kMaterial[piece.rank] : hidden_value;
    }
  }
  return 0.9 * (own - opponent) / kArmy;
}

std::string StrategoState::ActionToString(Action action) const {
  return MoveLabel(DecodeMove(action));
}

nlohmann::json StrategoState::DoSerialize() const {
  nlohmann::json cells = nlohmann::json::array();
  for (const Piece& p : board_) cells.push_back({p.owner, p.rank, p.revealed});
  return {{"board", std::move(cells)}, {"deployment", deployment_}};
}

}  // namespace tabletop::stratego
