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

#include "tabletop/games/exploding_kittens.h"

#include <algorithm>
#include <numeric>

namespace tabletop::exploding_kittens {
namespace {

constexpr std::array<std::string_view, kNumCardTypes> kNames = {
    "exploding_kitten", "defuse",   "nope",        "attack",       "skip",
    "favor",            "shuffle",  "see_future",  "tacocat",      "cattermelon",
    "hairy_potato_cat", "beard_cat", "rainbow_ralphing_cat"};

// Copies of each type in the box, excluding kittens (n - 1 per game).
constexpr std::array<int, kNumCardTypes> kBoxCounts = {4, 6, 5, 4, 4, 4, 4, 5, 4, 4, 4, 4, 4};

constexpr std::array<std::string_view, 4> kPhaseNames = {"turn", "react", "give", "place"};

bool IsCat(int card) { return card >= kTacocat; }

std::string OffsetLabel(int offset) { return "target+" + std::to_string(offset); }

}  // namespace

std::string_view CardName(int card) { return kNames.at(card); }
std::string_view PhaseName(Phase phase) { return kPhaseNames[static_cast<int>(phase)]; }

ActionTree BuildActionTree(int num_players) {
  const int n = num_players;
  ActionTree tree(GameId::kExplodingKittens, n);
  const int turn = tree.AddCategory(ActionTree::kRoot, "end_turn");
  tree.AddLeaf(turn, "draw");
  const int play = tree.AddCategory(ActionTree::kRoot, "play");
  for (int c : {kAttack, kSkip, kShuffle, kSeeTheFuture}) tree.AddLeaf(play, std::string(kNames[c]));
  const int favor = tree.AddCategory(play, "favor");
  for (int o = 1; o < n; ++o) tree.AddLeaf(favor, "favor(" + OffsetLabel(o) + ")");
  for (int k = 0; k < kNumCatTypes; ++k) {
    const std::string name(kNames[kTacocat + k]);
    const int cat = tree.AddCategory(play, name + "_pair");
    for (int o = 1; o < n; ++o) tree.AddLeaf(cat, name + "_pair(" + OffsetLabel(o) + ")");
  }
  const int react = tree.AddCategory(ActionTree::kRoot, "react");
  tree.AddLeaf(react, "nope");
  tree.AddLeaf(react, "pass");
  const int give = tree.AddCategory(ActionTree::kRoot, "give");
  for (int c = 1; c < kNumCardTypes; ++c) tree.AddLeaf(give, "give(" + std::string(kNames[c]) + ")");
  const int place = tree.AddCategory(ActionTree::kRoot, "place_kitten");
  for (int d = 0; d < kPlacementSlots; ++d) tree.AddLeaf(place, "place(depth=" + std::to_string(d) + ")");
  tree.AddLeaf(place, "place(bottom)");
  return tree;
}

ExplodingKittensState::ExplodingKittensState(int num_players, Seed seed)
    : GameState(GameId::kExplodingKittens, num_players, seed, 1000),
      hands_(num_players),
      alive_(num_players, true) {
  const int n = num_players;
  for (int c = kNope; c < kNumCardTypes; ++c) deck_.insert(deck_.end(), kBoxCounts[c], c);
  rng().Shuffle(std::span<int>(deck_));
  for (int p = 0; p < n; ++p) {
    hands_[p].fill(0);
    for (int k = 0; k < kHandDeal; ++k) {
      ++hands_[p][deck_.back()];
      deck_.pop_back();
    }
    hands_[p][kDefuse] = 1;
  }
  const int extra_defuses = n <= 3 ? 2 : kBoxCounts[kDefuse] - n;
  deck_.insert(deck_.end(), extra_defuses, kDefuse);
  deck_.insert(deck_.end(), n - 1, kExplodingKitten);
  rng().Shuffle(std::span<int>(deck_));
  known_top_.assign(n, {-1, -1, -1});
}

int ExplodingKittensState::hand_size(int p) const {
  return std::accumulate(hands_[p].begin(), hands_[p].end(), 0);
}

std::vector<Action> ExplodingKittensState::DoLegalActions() const {
  const ActionLayout L = layout();
  const int p = current_player_;
  const auto& hand = hands_[p];
  std::vector<Action> out;
  switch (phase_) {
    case Phase::kTurn: {
      out.push_back(L.draw());
      if (hand[kAttack]) out.push_back(L.attack());
      if (hand[kSkip]) out.push_back(L.skip());
      if (hand[kShuffle]) out.push_back(L.shuffle());
      if (hand[kSeeTheFuture]) out.push_back(L.see_future());
      for (int o = 1; o < num_players(); ++o) {
        const int q = Seat(o);
        if (!alive_[q] || hand_size(q) == 0) continue;
        if (hand[kFavor]) out.push_back(L.favor(o));
        for (int k = 0; k < kNumCatTypes; ++k) {
          if (hand[kTacocat + k] >= 2) out.push_back(L.cat_pair(k, o));
        }
      }
      break;
    }
    case Phase::kReact:
      out = {L.nope(), L.pass()};
      break;
    case Phase::kGive:
      for (int c = 1; c < kNumCardTypes; ++c) {
        if (hand[c]) out.push_back(L.give(c));
      }
      break;
    case Phase::kPlace: {
      const int depth = std::min<int>(kPlacementSlots, static_cast<int>(deck_.size()));
      for (int d = 0; d < depth; ++d) out.push_back(L.place(d));
      out.push_back(L.place_bottom());
      break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

void ExplodingKittensState::DoApply(Action action) {
  const ActionLayout L = layout();
  const int p = current_player_;
  switch (phase_) {
    case Phase::kTurn:
      if (action == L.draw()) {
        Draw();
      } else if (action == L.attack()) {
        PlayCard(kAttack, -1);
      } else if (action == L.skip()) {
        PlayCard(kSkip, -1);
      } else if (action == L.shuffle()) {
        PlayCard(kShuffle, -1);
      } else if (action == L.see_future()) {
        PlayCard(kSeeTheFuture, -1);
      } else if (action < L.cat_pair(0, 1)) {
        PlayCard(kFavor, Seat(action - L.favor(1) + 1));
      } else {
        const int rel = action - L.cat_pair(0, 1);
        const int n1 = num_players() - 1;
        PlayCard(kTacocat + rel / n1, Seat(rel % n1 + 1));
      }
      break;
    case Phase::kReact:
      if (action == L.nope()) {
        --hands_[p][kNope];
        discard_.push_back(kNope);
        ++nopes_;
        OpenWindow(p);
      } else {
        window_.erase(window_.begin());
      }
      if (window_.empty()) {
        Resolve();
      } else {
        current_player_ = window_.front();
      }
      break;
    case Phase::kGive: {
      const int card = action - L.give(1) + 1;
      --hands_[p][card];
      ++hands_[pending_.source][card];
      pending_ = Pending{};
      phase_ = Phase::kTurn;
      current_player_ = turn_owner_;
      break;
    }
    case Phase::kPlace: {
      const int size = static_cast<int>(deck_.size());
      const int depth = action == L.place_bottom() ? size : action - L.place(0);
      deck_.insert(deck_.end() - depth, kExplodingKitten);
      for (int q = 0; q < num_players(); ++q) {
        auto& known = known_top_[q];
        if (q != p) {
          known.fill(-1);
          continue;
        }
        for (int i = kSeeTheFutureDepth - 1; i > depth && i > 0; --i) known[i] = known[i - 1];
        if (depth < kSeeTheFutureDepth) known[depth] = kExplodingKitten;
      }
      FinishDraw();
      break;
    }
  }
}

void ExplodingKittensState::PlayCard(int card, int target) {
  const int p = current_player_;
  const int copies = IsCat(card) ? 2 : 1;
  hands_[p][card] -= copies;
  discard_.insert(discard_.end(), copies, card);
  pending_ = Pending{card, p, target};
  nopes_ = 0;
  OpenWindow(p);
  if (window_.empty()) {
    Resolve();
  } else {
    phase_ = Phase::kReact;
    current_player_ = window_.front();
  }
}

void ExplodingKittensState::OpenWindow(int last) {
  window_.clear();
  for (int k = 1; k < num_players(); ++k) {
    const int q = (last + k) % num_players();
    if (alive_[q] && hands_[q][kNope] > 0) window_.push_back(q);
  }
}

void ExplodingKittensState::Resolve() {
  phase_ = Phase::kTurn;
  current_player_ = turn_owner_;
  const Pending play = pending_;
  pending_ = Pending{};
  if (nopes_ % 2 == 1) return;
  switch (play.card) {
    case kAttack:
      NextTurn(2);
      break;
    case kSkip:
      if (--turns_left_ == 0) NextTurn(1);
      break;
    case kFavor:
      if (hand_size(play.target) > 0) {
        pending_ = play;
        phase_ = Phase::kGive;
        current_player_ = play.target;
      }
      break;
    case kShuffle:
      rng().Shuffle(std::span<int>(deck_));
      ForgetTop();
      break;
    case kSeeTheFuture: {
      auto& known = known_top_[play.source];
      known.fill(-1);
      for (int i = 0; i < kSeeTheFutureDepth && i < static_cast<int>(deck_.size()); ++i) {
        known[i] = deck_[deck_.size() - 1 - i];
      }
      break;
    }
    default: {
      const int size = hand_size(play.target);
      if (size == 0) break;
      int pick = static_cast<int>(rng().UniformInt(size));
      for (int c = 0; c < kNumCardTypes; ++c) {
        if (pick < hands_[play.target][c]) {
          --hands_[play.target][c];
          ++hands_[play.source][c];
          break;
        }
        pick -= hands_[play.target][c];
      }
    }
  }
}

void ExplodingKittensState::Draw() {
  const int p = current_player_;
  const int card = deck_.back();
  deck_.pop_back();
  ShiftKnownTop();
  if (card != kExplodingKitten) {
    ++hands_[p][card];
    FinishDraw();
    return;
  }
  if (hands_[p][kDefuse] > 0) {
    --hands_[p][kDefuse];
    discard_.push_back(kDefuse);
    phase_ = Phase::kPlace;
    return;
  }
  alive_[p] = false;
  for (int c = 0; c < kNumCardTypes; ++c) discard_.insert(discard_.end(), hands_[p][c], c);
  hands_[p].fill(0);
  discard_.push_back(kExplodingKitten);
  known_top_[p].fill(-1);
  if (std::count(alive_.begin(), alive_.end(), true) == 1) {
    std::vector<Outcome> results(num_players(), Outcome::kLoss);
    results[std::find(alive_.begin(), alive_.end(), true) - alive_.begin()] = Outcome::kWin;
    Finish(std::move(results));
    return;
  }
  NextTurn(1);
}

void ExplodingKittensState::FinishDraw() {
  phase_ = Phase::kTurn;
  if (--turns_left_ > 0) {
    current_player_ = turn_owner_;
    return;
  }
  NextTurn(1);
}

void ExplodingKittensState::NextTurn(int turns) {
  int next = turn_owner_;
  do {
    next = (next + 1) % num_players();
  } while (!alive_[next]);
  turn_owner_ = next;
  turns_left_ = turns;
  phase_ = Phase::kTurn;
  current_player_ = next;
}

void ExplodingKittensState::ForgetTop() {
  for (auto& known : known_top_) known.fill(-1);
}

void ExplodingKittensState::ShiftKnownTop() {
  for (auto& known : known_top_) {
    for (int i = 0; i + 1 < kSeeTheFutureDepth; ++i) known[i] = known[i + 1];
    known[kSeeTheFutureDepth - 1] = -1;
  }
}

void ExplodingKittensState::Vectorize(int player, std::span<float> out) const {
  const int n = num_players();
  std::fill(out.begin(), out.end(), 0.0f);
  int i = 0;
  for (int c = 1; c < kNumCardTypes; ++c) out[i++] = std::min(hands_[player][c] / 5.0f, 1.0f);
  for (int k = 1; k < n; ++k) {
    out[i++] = std::min(hand_size((player + k) % n) / 10.0f, 1.0f);
  }
  for (int k = 1; k < n; ++k) out[i++] = alive_[(player + k) % n] ? 1.0f : 0.0f;
  out[i++] = std::min(static_cast<float>(deck_.size()) / 50.0f, 1.0f);
  out[i + static_cast<int>(phase_)] = 1.0f;
  i += 4;
  out[i++] = turns_left_ / 2.0f;
  for (int d = 0; d < kSeeTheFutureDepth; ++d) {
    const int card = known_top_[player][d];
    if (card >= 0) out[i + card] = 1.0f;
    i += kNumCardTypes;
  }
  if (pending_.card >= 0) out[i + pending_.card] = 1.0f;
  i += kNumCardTypes;
  out[i++] = pending_.card >= 0 ? static_cast<float>(nopes_ % 2) : 0.0f;
  out[i++] = pending_.card >= 0 && pending_.target == player ? 1.0f : 0.0f;
  for (int c : discard_) {
    const int copies = c == kExplodingKitten ? n - 1 : kBoxCounts[c];
    out[i + c] += 1.0f / copies;
  }
}

nlohmann::json ExplodingKittensState::ObservationJson(int player) const {
  nlohmann::json hand = nlohmann::json::object();
  for (int c = 1; c < kNumCardTypes; ++c) hand[std::string(kNames[c])] = hands_[player][c];
  nlohmann::json players = nlohmann::json::array();
  for (int q = 0; q < num_players(); ++q) {
    players.push_back({{"seat", q}, {"alive", static_cast<bool>(alive_[q])},
                       {"hand_size", hand_size(q)}});
  }
  nlohmann::json known = nlohmann::json::array();
  for (int card : known_top_[player]) {
    known.push_back(card >= 0 ? nlohmann::json(kNames[card]) : nlohmann::json());
  }
  nlohmann::json discard = nlohmann::json::object();
  for (int c = 0; c < kNumCardTypes; ++c) {
    discard[std::string(kNames[c])] = std::count(discard_.begin(), discard_.end(), c);
  }
  nlohmann::json pending;
  if (pending_.card >= 0) {
    pending = {{"card", kNames[pending_.card]}, {"source", pending_.source},
               {"target", pending_.target}, {"nopes", nopes_}};
  }
  return {{"observer", player},
          {"phase", PhaseName(phase_)},
          {"turn_owner", turn_owner_},
          {"turns_left", turns_left_},
          {"hand", std::move(hand)},
          {"players", std::move(players)},
          {"deck_size", deck_.size()},
          {"known_top", std::move(known)},
          {"discard", std::move(discard)},
          {"pending", std::move(pending)},
          {"to_move", is_terminal() ? -1 : current_player_}};
}

double ExplodingKittensState::Heuristic(int player) const {
  if (!alive_[player]) return -0.9;
  return 0.5 + 0.4 * std::min(hand_size(player), 10) / 10.0;
}

std::string ExplodingKittensState::ActionToString(Action action) const {
  return BuildActionTree(num_players()).LeafLabel(action);
}

nlohmann::json ExplodingKittensState::DoSerialize() const {
  return {{"phase", PhaseName(phase_)},
          {"turn_owner", turn_owner_},
          {"turns_left", turns_left_},
          {"deck", deck_},
          {"discard", discard_},
          {"hands", hands_},
          {"alive", alive_},
          {"pending", {pending_.card, pending_.source, pending_.target}},
          {"nopes", nopes_},
          {"window", window_},
          {"known_top", known_top_}};
}

}  // namespace tabletop::exploding_kittens
