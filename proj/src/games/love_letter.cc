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

#include "tabletop/games/love_letter.h"

#include <algorithm>
#include <numeric>

#include "tabletop/errors.h"

namespace tabletop::love_letter {
namespace {

constexpr std::array<std::string_view, kNumCardTypes> kNames = {
    "guard", "priest", "baron", "handmaid", "prince", "king", "countess", "princess"};

int CardLeafCount(int card, int n) { return card == kGuard ? 1 + 8 * n : 1 + n; }

std::string TargetLabel(int offset) {
  return offset == 0 ? "self" : "target+" + std::to_string(offset);
}

std::string ActionLabel(const DecodedAction& d) {
  std::string out(kNames[d.card]);
  if (d.target_offset < 0) return out + "(none)";
  out += "(" + TargetLabel(d.target_offset);
  if (d.guess >= 0) out += ",guess=" + std::string(kNames[d.guess]);
  return out + ")";
}

}  // namespace

std::string_view CardName(int card) { return kNames.at(card); }

int TokensToWin(int num_players) {
  switch (num_players) {
    case 2: return 7;
    case 3: return 5;
    default: return 4;
  }
}

int CardActionBase(int card, int num_players) {
  int base = 0;
  for (int c = 0; c < card; ++c) base += CardLeafCount(c, num_players);
  return base;
}

int ActionCount(int num_players) { return 15 * num_players + 8; }

Action EncodeAction(int card, int target_offset, int guess, int num_players) {
  const int base = CardActionBase(card, num_players);
  if (target_offset < 0) return base;
  if (card == kGuard) return base + 1 + target_offset * kNumCardTypes + guess;
  return base + 1 + target_offset;
}

DecodedAction DecodeAction(Action action, int num_players) {
  for (int c = 0; c < kNumCardTypes; ++c) {
    const int size = CardLeafCount(c, num_players);
    if (action < size) {
      if (action == 0) return {c, -1, -1};
      if (c == kGuard) return {c, (action - 1) / kNumCardTypes, (action - 1) % kNumCardTypes};
      return {c, action - 1, -1};
    }
    action -= size;
  }
  throw ConfigError("love letter action out of range");
}

ActionTree BuildActionTree(int num_players) {
  ActionTree tree(GameId::kLoveLetter, num_players);
  for (int c = 0; c < kNumCardTypes; ++c) {
    const int cat = tree.AddCategory(ActionTree::kRoot, std::string(kNames[c]));
    tree.AddLeaf(cat, ActionLabel({c, -1, -1}));
    for (int o = 0; o < num_players; ++o) {
      if (c == kGuard) {
        const int target = tree.AddCategory(cat, TargetLabel(o));
        for (int g = 0; g < kNumCardTypes; ++g) tree.AddLeaf(target, ActionLabel({c, o, g}));
      } else {
        tree.AddLeaf(cat, ActionLabel({c, o, -1}));
      }
    }
  }
  return tree;
}

LoveLetterState::LoveLetterState(int num_players, Seed seed)
    : GameState(GameId::kLoveLetter, num_players, seed, 1000),
      hands_(num_players),
      discards_(num_players),
      alive_(num_players, true),
      protected_(num_players, false),
      tokens_(num_players, 0),
      known_(num_players, std::vector<int>(num_players, -1)) {
  StartRound(0);
}

void LoveLetterState::StartRound(int starter) {
  deck_.clear();
  for (int c = 0; c < kNumCardTypes; ++c) deck_.insert(deck_.end(), kCardCounts[c], c);
  rng().Shuffle(std::span<int>(deck_));
  facedown_ = deck_.back();
  deck_.pop_back();
  faceup_.clear();
  if (num_players() == 2) {
    for (int i = 0; i < 3; ++i) {
      faceup_.push_back(deck_.back());
      deck_.pop_back();
    }
  }
  for (int p = 0; p < num_players(); ++p) {
    hands_[p].clear();
    discards_[p].clear();
    alive_[p] = true;
    protected_[p] = false;
    std::fill(known_[p].begin(), known_[p].end(), -1);
  }
  for (int k = 0; k < num_players(); ++k) DrawInto((starter + k) % num_players());
  current_player_ = starter;
  DrawInto(starter);
}

void LoveLetterState::DrawInto(int p) {
  hands_[p].push_back(deck_.back());
  deck_.pop_back();
}

int LoveLetterState::AliveCount() const {
  return static_cast<int>(std::count(alive_.begin(), alive_.end(), true));
}

void LoveLetterState::Forget(int target) {
  for (int o = 0; o < num_players(); ++o) known_[o][target] = -1;
}

void LoveLetterState::Eliminate(int p) {
  discards_[p].insert(discards_[p].end(), hands_[p].begin(), hands_[p].end());
  hands_[p].clear();
  alive_[p] = false;
  protected_[p] = false;
  Forget(p);
}

std::vector<Action> LoveLetterState::DoLegalActions() const {
  const int p = current_player_;
  const int n = num_players();
  const std::vector<int>& hand = hands_[p];
  auto holds = [&](int c) { return std::find(hand.begin(), hand.end(), c) != hand.end(); };

  std::vector<Action> out;
  if (holds(kCountess) && (holds(kKing) || holds(kPrince))) {
    out.push_back(EncodeAction(kCountess, -1, -1, n));
    return out;
  }
  std::vector<int> targets;
  for (int o = 1; o < n; ++o) {
    const int q = (p + o) % n;
    if (alive_[q] && !protected_[q]) targets.push_back(o);
  }
  for (int c = 0; c < kNumCardTypes; ++c) {
    if (!holds(c)) continue;
    switch (c) {
      case kGuard:
        if (targets.empty()) out.push_back(EncodeAction(c, -1, -1, n));
        for (int o : targets) {
          for (int g = kPriest; g < kNumCardTypes; ++g) out.push_back(EncodeAction(c, o, g, n));
        }
        break;
      case kPriest:
      case kBaron:
      case kKing:
        if (targets.empty()) out.push_back(EncodeAction(c, -1, -1, n));
        for (int o : targets) out.push_back(EncodeAction(c, o, -1, n));
        break;
      case kPrince:
        out.push_back(EncodeAction(c, 0, -1, n));
        for (int o : targets) out.push_back(EncodeAction(c, o, -1, n));
        break;
      default:
        out.push_back(EncodeAction(c, -1, -1, n));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

void LoveLetterState::DoApply(Action action) {
  const int n = num_players();
  const int p = current_player_;
  const DecodedAction d = DecodeAction(action, n);
  auto& hand = hands_[p];
  hand.erase(std::find(hand.begin(), hand.end(), d.card));
  discards_[p].push_back(d.card);
  for (int o = 0; o < n; ++o) {
    if (known_[o][p] == d.card) known_[o][p] = -1;
  }
  const int t = d.target_offset < 0 ? -1 : (p + d.target_offset) % n;

  switch (d.card) {
    case kGuard:
      if (t >= 0 && hands_[t].front() == d.guess) Eliminate(t);
      break;
    case kPriest:
      if (t >= 0) known_[p][t] = hands_[t].front();
      break;
    case kBaron:
      if (t >= 0) {
        const int mine = hand.front();
        const int theirs = hands_[t].front();
        if (mine > theirs) {
          Eliminate(t);
        } else if (theirs > mine) {
          Eliminate(p);
        } else {
          known_[p][t] = theirs;
          known_[t][p] = mine;
        }
      }
      break;
    case kHandmaid:
      protected_[p] = true;
      break;
    case kPrince: {
      const int discarded = hands_[t].front();
      hands_[t].clear();
      discards_[t].push_back(discarded);
      Forget(t);
      if (discarded == kPrincess) {
        alive_[t] = false;
        protected_[t] = false;
      } else if (!deck_.empty()) {
        DrawInto(t);
      } else {
        hands_[t].push_back(facedown_);
        facedown_ = -1;
      }
      break;
    }
    case kKing:
      if (t >= 0) {
        std::swap(hands_[p], hands_[t]);
        Forget(p);
        Forget(t);
        known_[p][t] = hands_[t].front();
        known_[t][p] = hands_[p].front();
      }
      break;
    case kCountess:
      break;
    case kPrincess:
      Eliminate(p);
      break;
  }

  if (AliveCount() == 1) {
    const int winner = static_cast<int>(std::find(alive_.begin(), alive_.end(), true) - alive_.begin());
    EndRound({winner});
    return;
  }
  if (deck_.empty()) {
    int best = -1;
    int best_discards = -1;
    std::vector<int> winners;
    for (int q = 0; q < n; ++q) {
      if (!alive_[q]) continue;
      const int value = hands_[q].front();
      // Printed values are index + 1.
      const int discard_sum = std::accumulate(discards_[q].begin(), discards_[q].end(), 0) +
                              static_cast<int>(discards_[q].size());
      if (value > best || (value == best && discard_sum > best_discards)) {
        best = value;
        best_discards = discard_sum;
        winners = {q};
      } else if (value == best && discard_sum == best_discards) {
        winners.push_back(q);
      }
    }
    EndRound(winners);
    return;
  }
  AdvanceTurn(p);
}

void LoveLetterState::AdvanceTurn(int from) {
  int next = from;
  do {
    next = (next + 1) % num_players();
  } while (!alive_[next]);
  protected_[next] = false;
  current_player_ = next;
  DrawInto(next);
}

void LoveLetterState::EndRound(const std::vector<int>& winners) {
  bool game_over = false;
  for (int w : winners) {
    if (++tokens_[w] >= TokensToWin(num_players())) game_over = true;
  }
  ++round_;
  if (game_over) {
    std::vector<double> scores(tokens_.begin(), tokens_.end());
    FinishByScores(scores);
    return;
  }
  StartRound(winners.front());
}

void LoveLetterState::Vectorize(int player, std::span<float> out) const {
  const int n = num_players();
  std::fill(out.begin(), out.end(), 0.0f);
  for (int c : hands_[player]) out[c] += 0.5f;
  for (int q = 0; q < n; ++q) {
    for (int c : discards_[q]) out[8 + c] += 1.0f / kCardCounts[c];
  }
  for (int c : faceup_) out[16 + c] += 1.0f / kCardCounts[c];
  out[24] = static_cast<float>(deck_.size()) / kDeckSize;
  const float target = static_cast<float>(TokensToWin(n));
  for (int k = 0; k < n; ++k) {
    out[25 + k] = std::min(tokens_[(player + k) % n] / target, 1.0f);
  }
  const int status_base = 25 + n;
  const int known_base = status_base + 2 * (n - 1);
  for (int k = 1; k < n; ++k) {
    const int q = (player + k) % n;
    out[status_base + 2 * (k - 1)] = alive_[q] ? 1.0f : 0.0f;
    out[status_base + 2 * (k - 1) + 1] = protected_[q] ? 1.0f : 0.0f;
    const int known = known_[player][q];
    if (known >= 0) out[known_base + 8 * (k - 1) + known] = 1.0f;
  }
}

nlohmann::json LoveLetterState::ObservationJson(int player) const {
  auto names = [](const std::vector<int>& cards) {
    nlohmann::json out = nlohmann::json::array();
    for (int c : cards) out.push_back(kNames[c]);
    return out;
  };
  nlohmann::json players = nlohmann::json::array();
  for (int q = 0; q < num_players(); ++q) {
    nlohmann::json entry = {{"seat", q},
                            {"alive", static_cast<bool>(alive_[q])},
                            {"protected", static_cast<bool>(protected_[q])},
                            {"tokens", tokens_[q]},
                            {"discards", names(discards_[q])},
                            {"hand_size", hands_[q].size()}};
    if (q != player) {
      const int known = known_[player][q];
      entry["known_card"] = known >= 0 ? nlohmann::json(kNames[known]) : nlohmann::json();
    }
    players.push_back(std::move(entry));
  }
  return {{"observer", player},
          {"round", round_},
          {"hand", names(hands_[player])},
          {"faceup", names(faceup_)},
          {"deck_size", deck_.size()},
          {"tokens_to_win", TokensToWin(num_players())},
          {"players", std::move(players)},
          {"to_move", is_terminal() ? -1 : current_player_}};
}

double LoveLetterState::Heuristic(int player) const {
  return 0.45 * (alive_[player] ? 1.0 : 0.0) +
         0.45 * tokens_[player] / static_cast<double>(TokensToWin(num_players()));
}

std::string LoveLetterState::ActionToString(Action action) const {
  return ActionLabel(DecodeAction(action, num_players()));
}

nlohmann::json LoveLetterState::DoSerialize() const {
  return {{"round", round_},     {"deck", deck_},         {"facedown", facedown_},
          {"faceup", faceup_},   {"hands", hands_},       {"discards", discards_},
          {"alive", alive_},     {"protected", protected_}, {"tokens", tokens_},
          {"known", known_}};
}

}  // namespace tabletop::love_letter
