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

#include "tabletop/games/diamant.h"

#include <algorithm>
#include <numeric>

namespace tabletop::diamant {
namespace {

float Saturate(double value, double max) {
  return static_cast<float>(std::min(value / max, 1.0));
}

nlohmann::json TileJson(const Tile& t, int gems) {
  if (t.is_treasure()) return {{"kind", "treasure"}, {"value", t.value}, {"gems", gems}};
  return {{"kind", "hazard"}, {"type", t.kind}};
}

}  // namespace

ActionTree BuildActionTree(int num_players) {
  ActionTree tree(GameId::kDiamant, num_players);
  const int cave = tree.AddCategory(ActionTree::kRoot, "cave");
  tree.AddLeaf(cave, "continue");
  tree.AddLeaf(cave, "return");
  const int camp = tree.AddCategory(ActionTree::kRoot, "camp");
  tree.AddLeaf(camp, "wait");
  return tree;
}

DiamantState::DiamantState(int num_players, Seed seed)
    : GameState(GameId::kDiamant, num_players, seed, 1000),
      in_cave_(num_players, true),
      carried_(num_players, 0),
      banked_(num_players, 0),
      choice_(num_players, -1) {
  StartRound();
}

void DiamantState::StartRound() {
  deck_.clear();
  for (int v : kTreasureValues) deck_.push_back(Tile{Tile::kTreasure, v});
  for (int t = 0; t < kHazardTypes; ++t) {
    for (int c = hazards_removed_[t]; c < kHazardCopies; ++c) deck_.push_back(Tile{t, 0});
  }
  rng().Shuffle(std::span<Tile>(deck_));
  path_.clear();
  path_gems_.clear();
  hazards_seen_.fill(0);
  std::fill(in_cave_.begin(), in_cave_.end(), true);
  std::fill(carried_.begin(), carried_.end(), 0);
  RevealTile();
}

int DiamantState::PlayersInCave() const {
  return static_cast<int>(std::count(in_cave_.begin(), in_cave_.end(), true));
}

void DiamantState::RevealTile() {
  if (deck_.empty()) {
    EndRound();
    return;
  }
  const Tile tile = deck_.back();
  deck_.pop_back();
  path_.push_back(tile);
  if (tile.is_treasure()) {
    const int explorers = PlayersInCave();
    const int share = tile.value / explorers;
    for (int p = 0; p < num_players(); ++p) {
      if (in_cave_[p]) carried_[p] += share;
    }
    path_gems_.push_back(tile.value - share * explorers);
    return;
  }
  path_gems_.push_back(0);
  if (++hazards_seen_[tile.kind] == 2) {
    for (int p = 0; p < num_players(); ++p) {
      if (in_cave_[p]) {
        carried_[p] = 0;
        in_cave_[p] = false;
      }
    }
    ++hazards_removed_[tile.kind];
    EndRound();
  }
}

void DiamantState::EndRound() {
  for (int p = 0; p < num_players(); ++p) {
    banked_[p] += carried_[p];
    carried_[p] = 0;
    in_cave_[p] = false;
  }
  if (++round_ == kRounds) {
    std::vector<double> scores(banked_.begin(), banked_.end());
    FinishByScores(scores);
    return;
  }
  StartRound();
}

void DiamantState::ResolveChoices() {
  std::vector<int> leavers;
  for (int p = 0; p < num_players(); ++p) {
    if (in_cave_[p] && choice_[p] == kReturn) leavers.push_back(p);
  }
  if (!leavers.empty()) {
    const int k = static_cast<int>(leavers.size());
    for (int& gems : path_gems_) {
      const int share = gems / k;
      gems -= share * k;
      for (int p : leavers) carried_[p] += share;
    }
    for (int p : leavers) {
      banked_[p] += carried_[p];
      carried_[p] = 0;
      in_cave_[p] = false;
    }
  }
  if (PlayersInCave() == 0) {
    EndRound();
  } else {
    RevealTile();
  }
}

std::vector<Action> DiamantState::DoLegalActions() const {
  if (in_cave_[current_player_]) return {kContinue, kReturn};
  return {kWait};
}

bool DiamantState::DoIsLegal(Action action) const {
  if (in_cave_[current_player_]) return action == kContinue || action == kReturn;
  return action == kWait;
}

void DiamantState::DoApply(Action action) {
  choice_[current_player_] = action;
  if (current_player_ + 1 < num_players()) {
    ++current_player_;
    return;
  }
  ResolveChoices();
  std::fill(choice_.begin(), choice_.end(), -1);
  current_player_ = 0;
}

void DiamantState::Vectorize(int player, std::span<float> out) const {
  std::fill(out.begin(), out.end(), 0.0f);
  int treasures = 0;
  for (const Tile& t : path_) {
    if (t.is_treasure()) {
      ++treasures;
    } else {
      out[t.kind] = 1.0f;
    }
  }
  out[5] = treasures / 15.0f;
  out[6] = path_gems_.empty() ? 0.0f : path_gems_.back() / 17.0f;
  out[7] = Saturate(std::accumulate(path_gems_.begin(), path_gems_.end(), 0), 20.0);
  out[8] = Saturate(carried_[player], 20.0);
  out[9] = Saturate(banked_[player], 50.0);
  out[10] = in_cave_[player] ? 1.0f : 0.0f;
  out[11] = static_cast<float>(PlayersInCave()) / num_players();
  out[12] = round_ / 4.0f;
  for (int t = 0; t < kHazardTypes; ++t) out[13 + t] = hazards_removed_[t] / 2.0f;
  const int n = num_players();
  for (int k = 1; k < n; ++k) {
    const int q = (player + k) % n;
    out[18 + (k - 1)] = Saturate(carried_[q], 20.0);
    out[18 + (n - 1) + (k - 1)] = in_cave_[q] ? 1.0f : 0.0f;
  }
}

nlohmann::json DiamantState::ObservationJson(int player) const {
  nlohmann::json path = nlohmann::json::array();
  for (std::size_t i = 0; i < path_.size(); ++i) path.push_back(TileJson(path_[i], path_gems_[i]));
  nlohmann::json players = nlohmann::json::array();
  for (int p = 0; p < num_players(); ++p) {
    nlohmann::json entry = {{"seat", p}, {"in_cave", static_cast<bool>(in_cave_[p])},
                            {"carried", carried_[p]}};
    if (p == player) entry["banked"] = banked_[p];
    players.push_back(std::move(entry));
  }
  return {{"observer", player},
          {"round", round_},
          {"path", std::move(path)},
          {"hazards_removed", hazards_removed_},
          {"players", std::move(players)},
          {"to_move", is_terminal() ? -1 : current_player_}};
}

double DiamantState::Heuristic(int player) const {
  const double gems = banked_[player] + carried_[player];
  return 0.9 * gems / (gems + 25.0);
}

std::string DiamantState::ActionToString(Action action) const {
  switch (action) {
    case kContinue: return "continue";
    case kReturn: return "return";
    case kWait: return "wait";
  }
  return "?";
}

nlohmann::json DiamantState::DoSerialize() const {
  auto tiles = [](const std::vector<Tile>& v) {
    nlohmann::json out = nlohmann::json::array();
    for (const Tile& t : v) out.push_back({t.kind, t.value});
    return out;
  };
  return {{"round", round_},
          {"deck", tiles(deck_)},
          {"path", tiles(path_)},
          {"path_gems", path_gems_},
          {"hazards_seen", hazards_seen_},
          {"hazards_removed", hazards_removed_},
          {"in_cave", in_cave_},
          {"carried", carried_},
          {"banked", banked_},
          {"choice", choice_}};
}

}  // namespace tabletop::diamant
