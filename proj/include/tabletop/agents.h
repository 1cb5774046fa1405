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

#ifndef TABLETOP_AGENTS_H_
#define TABLETOP_AGENTS_H_

#include <memory>
#include <string>

#include "tabletop/game.h"
#include "tabletop/nn/policy_net.h"
#include "tabletop/rng.h"

namespace tabletop {

// Uniform over LegalActions().
Action RandomAct(const GameState& state, Rng& rng);

// Scores a successor from `player`'s point of view: +1/0/-1 once finished,
// otherwise the game's Heuristic.
double OslaScore(const GameState& successor, int player);

// Applies each legal action to a copy of `state` once and returns a best
// scoring one; ties are broken uniformly with `rng`.
Action OslaAct(const GameState& state, Rng& rng);

class Agent {
 public:
  virtual ~Agent() = default;
  // Chooses for state.current_player().
  virtual Action Act(const GameState& state) = 0;
  virtual std::string name() const = 0;
};

class RandomAgent : public Agent {
 public:
  explicit RandomAgent(Seed seed) : rng_(seed) {}
  Action Act(const GameState& state) override { return RandomAct(state, rng_); }
  std::string name() const override { return "random"; }

 private:
  Rng rng_;
};

class OslaAgent : public Agent {
 public:
  explicit OslaAgent(Seed seed) : rng_(seed) {}
  Action Act(const GameState& state) override { return OslaAct(state, rng_); }
  std::string name() const override { return "osla"; }

 private:
  Rng rng_;
};

// Samples from the masked policy of a trained network using only the
// acting player's observation and mask. `greedy` takes the arg-max instead.
class PolicyAgent : public Agent {
 public:
  PolicyAgent(std::shared_ptr<const nn::PolicyNet<float>> net, Seed seed, std::string label,
              bool greedy = false);
  Action Act(const GameState& state) override;
  std::string name() const override { return label_; }

 private:
  std::shared_ptr<const nn::PolicyNet<float>> net_;
  Rng rng_;
  std::string label_;
  bool greedy_;
  std::vector<float> obs_;
};

// Parsed form of "random", "osla" or "ppo:<checkpoint path>".
struct AgentSpec {
  enum class Kind { kRandom, kOsla, kPolicy };
  Kind kind = Kind::kRandom;
  std::string checkpoint;

  // Throws ConfigError on anything else.
  static AgentSpec Parse(const std::string& text);
  std::string ToString() const;
  bool operator==(const AgentSpec&) const = default;
};

// Policy checkpoints are checked against the game's observation shape and
// action count.
std::unique_ptr<Agent> MakeAgent(const AgentSpec& spec, Seed seed, GameId game, int num_players);

}  // namespace tabletop

#endif  // TABLETOP_AGENTS_H_
