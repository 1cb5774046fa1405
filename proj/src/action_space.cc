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

#include "tabletop/action_space.h"

#include <algorithm>

#include "tabletop/game_spec.h"
#include "tabletop/games/diamant.h"
#include "tabletop/games/exploding_kittens.h"
#include "tabletop/games/love_letter.h"
#include "tabletop/games/stratego.h"
#include "tabletop/games/tic_tac_toe.h"

namespace tabletop {

ActionTree::ActionTree(GameId game, int num_players)
    : game_(game), num_players_(num_players) {
  nodes_.push_back(Node{std::string(GameName(game)), -1, {}, -1});
}

int ActionTree::AddCategory(int parent, std::string label) {
  const int id = static_cast<int>(nodes_.size());
  nodes_.push_back(Node{std::move(label), parent, {}, -1});
  nodes_.at(parent).children.push_back(id);
  return id;
}

int ActionTree::AddLeaf(int parent, std::string label) {
  const int id = static_cast<int>(nodes_.size());
  const int leaf = static_cast<int>(leaf_nodes_.size());
  nodes_.push_back(Node{std::move(label), parent, {}, leaf});
  nodes_.at(parent).children.push_back(id);
  leaf_nodes_.push_back(id);
  return leaf;
}

const std::string& ActionTree::LeafLabel(int leaf) const {
  return nodes_[leaf_nodes_.at(leaf)].label;
}

std::string ActionTree::LeafPath(int leaf) const {
  std::vector<const std::string*> parts;
  for (int id = leaf_nodes_.at(leaf); id != kRoot; id = nodes_[id].parent) {
    parts.push_back(&nodes_[id].label);
  }
  std::string out;
  for (auto it = parts.rbegin(); it != parts.rend(); ++it) {
    if (!out.empty()) out += '/';
    out += **it;
  }
  return out;
}

ActionTree BuildTree(GameId game, int num_players) {
  CheckPlayerCount(game, num_players);
  switch (game) {
    case GameId::kTicTacToe: return tic_tac_toe::BuildActionTree();
    case GameId::kDiamant: return diamant::BuildActionTree(num_players);
    case GameId::kExplodingKittens: return exploding_kittens::BuildActionTree(num_players);
    case GameId::kLoveLetter: return love_letter::BuildActionTree(num_players);
    case GameId::kStratego: return stratego::BuildActionTree();
  }
  throw ConfigError("unsupported game");
}

int ActionMask::count() const {
  return static_cast<int>(std::count(bits.begin(), bits.end(), std::uint8_t{1}));
}

std::vector<Action> ActionMask::TrueSet() const {
  std::vector<Action> out;
  for (int i = 0; i < size(); ++i) {
    if (bits[i]) out.push_back(i);
  }
  return out;
}

ActionMask MaskFromLegal(int leaf_count, std::span<const Action> legal) {
  ActionMask mask{std::vector<std::uint8_t>(leaf_count, 0)};
  for (Action a : legal) mask.bits.at(a) = 1;
  return mask;
}

ActionMask ComputeMask(const ActionTree& tree, const GameState& state) {
  if (tree.game() != state.game() || tree.num_players() != state.num_players()) {
    throw ConfigError("action tree for " + std::string(GameName(tree.game())) + "/" +
                      std::to_string(tree.num_players()) + "p does not match state " +
                      std::string(GameName(state.game())) + "/" +
                      std::to_string(state.num_players()) + "p");
  }
  const std::vector<Action> legal = state.LegalActions();
  return MaskFromLegal(tree.leaf_count(), legal);
}

void CheckMaskShape(int values, const ActionMask& mask) {
  if (values != mask.size()) {
    throw ShapeError("mask length " + std::to_string(mask.size()) +
                     " does not match vector length " + std::to_string(values));
  }
  if (mask.count() == 0) throw InvalidMaskError("mask has no legal action");
}

}  // namespace tabletop
