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

#ifndef TABLETOP_GAMES_DIAMANT_H_
#define TABLETOP_GAMES_DIAMANT_H_

#include <array>
#include <vector>

#include "tabletop/action_space.h"
#include "tabletop/game.h"

namespace tabletop::diamant {

inline constexpr int kHazardTypes = 5;
inline constexpr int kHazardCopies = 3;
inline constexpr int kRounds = 5;
inline constexpr std::array<int, 15> kTreasureValues = {1, 2, 3, 4, 5, 5, 7, 7,
                                                         9, 11, 11, 13, 14, 15, 17};

enum DiamantAction : Action { kContinue = 0, kReturn = 1, kWait = 2 };

// Root -> "cave" {continue, return}, "camp" {wait}.
ActionTree BuildActionTree(int num_players);

struct Tile {
  // 0..4 for a hazard type, kTreasure otherwise.
  int kind = 0;
  int value = 0;
  static constexpr int kTreasure = -1;
  bool is_treasure() const { return kind == kTreasure; }
  bool operator==(const Tile&) const = default;
};

// Push-your-luck cave exploration over five expeditions.
//
// Each reveal starts a decision round in which every player acts once in
// seat order: explorers choose continue/return, players at camp take the
// wait action. Choices are hidden until the round resolves. Returning
// players split the gems left on the path and bank everything they carry.
// If anyone remains, the next tile is revealed; the second hazard of one
// type traps everyone still inside (carried gems lost, one copy of that
// hazard leaves the game). Highest banked total after five expeditions wins.
//
// Observation (18 + 2(n-1) values, all in [0,1]):
//   [0,5)   hazard types revealed in this expedition (indicator)
//   5       treasure tiles revealed / 15
//   6       gems left on the newest tile / 17
//   7       gems left on the whole path / 20, saturating
//   8       observer's carried gems / 20, saturating
//   9       observer's banked gems / 50, saturating
//   10      observer in cave
//   11      players in cave / n
//   12      expedition index / 4
//   [13,18) hazard copies removed per type / 2
//   then per opponent (seat order after observer): carried gems / 20
//   (saturating), then per opponent: in cave
class DiamantState : public GameState {
 public:
  DiamantState(int num_players, Seed seed);

  static constexpr int ObservationSize(int num_players) {
    return 18 + 2 * (num_players - 1);
  }

  int round() const { return round_; }
  bool in_cave(int p) const { return in_cave_[p]; }
  int carried(int p) const { return carried_[p]; }
  int banked(int p) const { return banked_[p]; }
  const std::vector<Tile>& path() const { return path_; }
  const std::vector<int>& path_gems() const { return path_gems_; }
  const std::vector<Tile>& deck() const { return deck_; }
  const std::array<int, kHazardTypes>& hazards_removed() const { return hazards_removed_; }

  // Test hooks: rearrange the hidden draw pile, overwrite the bank.
  void SetDeckForTesting(std::vector<Tile> deck) { deck_ = std::move(deck); }
  void SetBankedForTesting(int p, int gems) { banked_[p] = gems; }

  std::vector<int> ObservationShape() const override {
    return {ObservationSize(num_players())};
  }
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
    return std::make_unique<DiamantState>(*this);
  }

 private:
  void StartRound();
  void RevealTile();
  void ResolveChoices();
  void EndRound();
  int PlayersInCave() const;

  int round_ = 0;
  std::vector<Tile> deck_;  // back() is the next tile
  std::vector<Tile> path_;
  std::vector<int> path_gems_;
  std::array<int, kHazardTypes> hazards_seen_{};
  std::array<int, kHazardTypes> hazards_removed_{};
  std::vector<bool> in_cave_;
  std::vector<int> carried_;
  std::vector<int> banked_;
  std::vector<int> choice_;  // pending this decision round, -1 if none
};

}  // namespace tabletop::diamant

#endif  // TABLETOP_GAMES_DIAMANT_H_
