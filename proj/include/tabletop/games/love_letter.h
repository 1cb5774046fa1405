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

#ifndef TABLETOP_GAMES_LOVE_LETTER_H_
#define TABLETOP_GAMES_LOVE_LETTER_H_

#include <array>
#include <vector>

#include "tabletop/action_space.h"
#include "tabletop/game.h"

namespace tabletop::love_letter {

// Card types; the printed value is index + 1.
enum Card : int {
  kGuard = 0,
  kPriest,
  kBaron,
  kHandmaid,
  kPrince,
  kKing,
  kCountess,
  kPrincess,
  kNumCardTypes
};
inline constexpr std::array<int, kNumCardTypes> kCardCounts = {5, 2, 2, 2, 2, 1, 1, 1};
inline constexpr int kDeckSize = 16;

std::string_view CardName(int card);
int TokensToWin(int num_players);

// Flat layout, per card type in value order:
//   "none" (played without a target), then one leaf per target offset
//   0..n-1 relative to the actor (0 = self). The Guard splits each target
//   offset into eight guesses, one per card type.
// Sizes: Guard 1 + 8n, every other card 1 + n; total 15n + 8 (68 at n=4).
struct DecodedAction {
  int card;
  int target_offset;  // -1 for "none"
  int guess;          // Guard only, else -1
};
int CardActionBase(int card, int num_players);
Action EncodeAction(int card, int target_offset, int guess, int num_players);
DecodedAction DecodeAction(Action action, int num_players);
int ActionCount(int num_players);

ActionTree BuildActionTree(int num_players);

// Classic 16-card game played to TokensToWin(n) favour tokens. The round
// winner starts the next round. In two-player games three further cards are
// removed face up.
//
// Observation (25 + n + 10(n-1) values, all in [0,1]):
//   [0,8)   cards of each type in the observer's hand / 2
//   [8,16)  cards of each type in all discard piles / copies of that type
//   [16,24) face-up removed cards of each type / copies of that type
//   24      draw pile size / 16
//   then tokens per seat, observer first, / tokens to win (n values)
//   then per opponent in seat order after the observer: alive, protected
//   then per opponent: one-hot of the card the observer knows they hold
//   (all zero when unknown), 8 values each
class LoveLetterState : public GameState {
 public:
  LoveLetterState(int num_players, Seed seed);

  static constexpr int ObservationSize(int n) { return 25 + n + 10 * (n - 1); }

  const std::vector<int>& hand(int p) const { return hands_[p]; }
  const std::vector<int>& discards(int p) const { return discards_[p]; }
  const std::vector<int>& deck() const { return deck_; }
  const std::vector<int>& faceup() const { return faceup_; }
  bool alive(int p) const { return alive_[p]; }
  bool is_protected(int p) const { return protected_[p]; }
  int tokens(int p) const { return tokens_[p]; }
  int round() const { return round_; }
  // Card type `observer` knows `target` holds, or -1.
  int known_card(int observer, int target) const { return known_[observer][target]; }

  // Test hooks for state surgery on hidden components.
  void SetHandForTesting(int p, std::vector<int> cards) { hands_[p] = std::move(cards); }
  void SetDeckForTesting(std::vector<int> deck) { deck_ = std::move(deck); }
  void SetTokensForTesting(int p, int tokens) { tokens_[p] = tokens; }
  void SetDiscardsForTesting(int p, std::vector<int> cards) { discards_[p] = std::move(cards); }

  std::vector<int> ObservationShape() const override {
    return {ObservationSize(num_players())};
  }
  void Vectorize(int player, std::span<float> out) const override;
  nlohmann::json ObservationJson(int player) const override;
  double Heuristic(int player) const override;
  std::string ActionToString(Action action) const override;

 protected:
  std::vector<Action> DoLegalActions() const override;
  void DoApply(Action action) override;
  nlohmann::json DoSerialize() const override;
  std::unique_ptr<GameState> DoClone() const override {
    return std::make_unique<LoveLetterState>(*this);
  }

 private:
  void StartRound(int starter);
  void Eliminate(int p);
  void Forget(int target);
  void DrawInto(int p);
  void EndRound(const std::vector<int>& winners);
  void AdvanceTurn(int from);
  int AliveCount() const;

  int round_ = 0;
  std::vector<int> deck_;  // back() is the top
  int facedown_ = -1;
  std::vector<int> faceup_;
  std::vector<std::vector<int>> hands_;
  std::vector<std::vector<int>> discards_;
  std::vector<bool> alive_;
  std::vector<bool> protected_;
  std::vector<int> tokens_;
  std::vector<std::vector<int>> known_;
};

}  // namespace tabletop::love_letter

#endif  // TABLETOP_GAMES_LOVE_LETTER_H_
