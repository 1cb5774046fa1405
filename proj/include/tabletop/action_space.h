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

#ifndef TABLETOP_ACTION_SPACE_H_
#define TABLETOP_ACTION_SPACE_H_

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tabletop/errors.h"
#include "tabletop/game.h"

namespace tabletop {

// Fixed-shape enumeration of a game's complete action space. Internal nodes
// are categories, leaves are concrete actions. Leaves are numbered in
// depth-first order, which is also the order in which they are added.
class ActionTree {
 public:
  struct Node {
    std::string label;
    int parent = -1;
    std::vector<int> children;
    int leaf = -1;  // flat index, or -1 for a category
  };

  ActionTree(GameId game, int num_players);

  static constexpr int kRoot = 0;

  // Builder interface, used only while constructing a game's tree.
  int AddCategory(int parent, std::string label);
  int AddLeaf(int parent, std::string label);

  GameId game() const { return game_; }
  int num_players() const { return num_players_; }
  int leaf_count() const { return static_cast<int>(leaf_nodes_.size()); }
  int node_count() const { return static_cast<int>(nodes_.size()); }
  const Node& node(int id) const { return nodes_.at(id); }
  const std::vector<int>& categories() const { return nodes_[kRoot].children; }

  const std::string& LeafLabel(int leaf) const;
  // Labels from the top-level category down to the leaf, joined by '/'.
  std::string LeafPath(int leaf) const;

 private:
  GameId game_;
  int num_players_;
  std::vector<Node> nodes_;
  std::vector<int> leaf_nodes_;
};

ActionTree BuildTree(GameId game, int num_players);

// Legality bits over flattened leaves.
struct ActionMask {
  std::vector<std::uint8_t> bits;

  int size() const { return static_cast<int>(bits.size()); }
  bool operator[](int i) const { return bits[i] != 0; }
  int count() const;
  std::vector<Action> TrueSet() const;
  bool operator==(const ActionMask&) const = default;
};

ActionMask MaskFromLegal(int leaf_count, std::span<const Action> legal);
// Throws ConfigError when the tree was built for another game or player
// count, TerminalStateError on a finished state.
ActionMask ComputeMask(const ActionTree& tree, const GameState& state);

// Replacement for masked-out logits. exp(-1e9 - max) is exactly zero in
// float and double, so softmax gives them probability 0 without NaNs.
inline constexpr double kMaskedLogit = -1e9;

template <typename Scalar>
constexpr Scalar MaskedQValue() {
  return std::numeric_limits<Scalar>::lowest() / 2;
}

void CheckMaskShape(int values, const ActionMask& mask);

template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> MaskLogits(
    const Eigen::Ref<const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>>& logits,
    const ActionMask& mask) {
  CheckMaskShape(static_cast<int>(logits.size()), mask);
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> out = logits;
  for (int i = 0; i < mask.size(); ++i) {
    if (!mask[i]) out[i] = static_cast<Scalar>(kMaskedLogit);
  }
  return out;
}

template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> MaskQValues(
    const Eigen::Ref<const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>>& q,
    const ActionMask& mask) {
  CheckMaskShape(static_cast<int>(q.size()), mask);
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> out = q;
  for (int i = 0; i < mask.size(); ++i) {
    if (!mask[i]) out[i] = MaskedQValue<Scalar>();
  }
  return out;
}

// Numerically stable softmax. Entries at kMaskedLogit come out as exact 0.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> Softmax(
    const Eigen::Ref<const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>>& logits) {
  const Scalar max = logits.maxCoeff();
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> e = (logits.array() - max).exp();
  return e / e.sum();
}

// Lowest index attaining the maximum.
template <typename Scalar>
int Argmax(const Eigen::Ref<const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>>& v) {
  Eigen::Index idx = 0;
  v.maxCoeff(&idx);
  return static_cast<int>(idx);
}

}  // namespace tabletop

#endif  // TABLETOP_ACTION_SPACE_H_
