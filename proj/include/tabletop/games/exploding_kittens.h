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

#ifndef TABLETOP_GAMES_EXPLODING_KITTENS_H_
#define TABLETOP_GAMES_EXPLODING_KITTENS_H_

#include <array>
#include <vector>

#include "tabletop/action_space.h"
#include "tabletop/game.h"

namespace tabletop::exploding_kittens {

enum Card : int {
  kExplodingKitten = 0,
  kDefuse,
  kNope,
  kAttack,
  kSkip,
  kFavor,
  kShuffle,
  kSeeTheFuture,
  kTacocat,
  kCattermelon,
  kHairyPotatoCat,
  kBeardCat,
  kRainbowRalphingCat,
  kNumCardTypes
};
inline constexpr int kNumCatTypes = 5;
inline constexpr int kHandDeal = 7;
inline constexpr int kPlacementSlots = 6;  // explicit positions from the top
inline constexpr int kSeeTheFutureDepth = 3;

std::string_view CardName(int card);

enum class Phase { kTurn, kReact, kGive, kPlace };
std::string_view PhaseName(Phase phase);

// Flat layout for n players (26 + 6(n-1) leaves):
//   draw
//   attack, skip, shuffle, see-the-future
//   favor -> target offset 1..n-1
//   cat pair of each cat type -> target offset 1..n-1
//   nope, pass                      (reaction window)
//   give one card of type 1..12     (favor response)
//   place kitten at depth 0..5, bottom  (after a defuse)
struct ActionLayout {
  int n;
  int draw() const { return 0; }
  int attack() const { return 1; }
  int skip() const { return 2; }
  int shuffle() const { return 3; }
  int see_future() const { return 4; }
  int favor(int offset) const { return 5 + offset - 1; }
  int cat_pair(int cat, int offset) const { return 5 + (n - 1) * (1 + cat) + offset - 1; }
  int nope() const { return 5 + 6 * (n - 1); }
  int pass() const { return nope() + 1; }
  int give(int card) const { return nope() + 2 + card - 1; }
  int place(int depth) const { return give(kNumCardTypes - 1) + 1 + depth; }
  int place_bottom() const { return place(kPlacementSlots); }
  int size() const { return place_bottom() + 1; }
};

ActionTree BuildActionTree(int num_players);

// Base game without expansions. Every turn ends with a draw unless a Skip or
// Attack ends it. Nopeable plays open a reaction window: each other live
// player holding a Nope, in seat order after the last player to play into
// the chain, decides once (nope or pass). A Nope opens a fresh window.
// The effect happens when the window closes with an even number of Nopes.
// A Favor hands the decision to its target, who picks the card to give.
// Drawing a kitten with a Defuse lets the drawer place it back in the pile.
//
// Observation (85 + 2(n-1) values, in [0,1]):
//   [0,12)  observer's cards of types 1..12 / 5, saturating
//   then per opponent in seat order after the observer: hand size / 10
//   (saturating), then per opponent: alive
//   draw pile size / 50, saturating
//   phase one-hot (turn, react, give, place), 4 values
//   turns left for the turn owner / 2
//   top three cards of the draw pile as known to the observer, one-hot over
//   13 types each (all zero when unknown), 39 values
//   card awaiting resolution one-hot, 13 values
//   Nope count parity
//   observer is the target of the pending card
//   cards of each type in the discard pile / copies in the box, 13 values
class ExplodingKittensState : public GameState {
 public:
  ExplodingKittensState(int num_players, Seed seed);

  static constexpr int ObservationSize(int n) { return 85 + 2 * (n - 1); }

  struct Pending {
    int card = -1;  // -1 when nothing awaits resolution
    int source = -1;
    int target = -1;
  };

  Phase phase() const { return phase_; }
  int turn_owner() const { return turn_owner_; }
  int turns_left() const { return turns_left_; }
  const std::array<int, kNumCardTypes>& hand(int p) const { return hands_[p]; }
  int hand_size(int p) const;
  bool alive(int p) const { return alive_[p]; }
  const std::vector<int>& deck() const { return deck_; }
  const std::vector<int>& discard() const { return discard_; }
  const Pending& pending() const { return pending_; }
  int nopes() const { return nopes_; }
  const std::array<int, kSeeTheFutureDepth>& known_top(int p) const { return known_top_[p]; }

  // Test hooks for state surgery on hidden components.
  void SetHandForTesting(int p, std::array<int, kNumCardTypes> counts) { hands_[p] = counts; }
  void SetDeckForTesting(std::vector<int> deck) { deck_ = std::move(deck); }

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
    return std::make_unique<ExplodingKittensState>(*this);
  }

 private:
  ActionLayout layout() const { return ActionLayout{num_players()}; }
  int Seat(int offset) const { return (current_player_ + offset) % num_players(); }
  void PlayCard(int card, int target);
  void OpenWindow(int last);
  void Resolve();
  void Draw();
  void FinishDraw();
  void NextTurn(int turns);
  void ForgetTop();
  void ShiftKnownTop();

  Phase phase_ = Phase::kTurn;
  int turn_owner_ = 0;
  int turns_left_ = 1;
  std::vector<int> deck_;  // back() is the top
  std::vector<int> discard_;
  std::vector<std::array<int, kNumCardTypes>> hands_;
  std::vector<bool> alive_;
  Pending pending_;
  int nopes_ = 0;
  std::vector<int> window_;  // front() decides next
  std::vector<std::array<int, kSeeTheFutureDepth>> known_top_;
};

}  // namespace tabletop::exploding_kittens

#endif  // TABLETOP_GAMES_EXPLODING_KITTENS_H_
