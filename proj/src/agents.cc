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

#include "tabletop/agents.h"

#include <algorithm>

#include "tabletop/action_space.h"
#include "tabletop/errors.h"
#include "tabletop/game_spec.h"
#include "tabletop/nn/checkpoint.h"
#include "tabletop/nn/ppo.h"
#include "tabletop/observation.h"

namespace tabletop {

Action RandomAct(const GameState& state, Rng& rng) {
  const std::vector<Action> legal = state.LegalActions();
  return legal[rng.UniformInt(legal.size())];
}

double OslaScore(const GameState& successor, int player) {
  if (successor.is_terminal()) return successor.Reward(player);
  return successor.Heuristic(player);
}

Action OslaAct(const GameState& state, Rng& rng) {
  const int player = state.current_player();
  const std::vector<Action> legal = state.LegalActions();
  std::vector<Action> best;
  double best_score = 0.0;
  for (Action a : legal) {
    std::unique_ptr<GameState> next = state.Clone();
    next->Apply(a);
    const double score = OslaScore(*next, player);
    if (best.empty() || score > best_score) {
      best.assign(1, a);
      best_score = score;
    } else if (score == best_score) {
      best.push_back(a);
    }
  }
  return best[rng.UniformInt(best.size())];
}

PolicyAgent::PolicyAgent(std::shared_ptr<const nn::PolicyNet<float>> net, Seed seed,
                         std::string label, bool greedy)
    : net_(std::move(net)), rng_(seed), label_(std::move(label)), greedy_(greedy) {
  obs_.resize(net_->shape().input_size());
}

Action PolicyAgent::Act(const GameState& state) {
  VectorizeInto(state, state.current_player(), obs_);
  const Eigen::Map<const Eigen::VectorXf> x(obs_.data(), static_cast<Eigen::Index>(obs_.size()));
  const auto out = net_->Forward(x);
  nn::MaskMatrix mask = nn::MaskMatrix::Zero(net_->shape().actions, 1);
  for (Action a : state.LegalActions()) mask(a, 0) = 1;
  const Eigen::MatrixXf logp = nn::MaskedLogSoftmax<float>(out.logits, mask);
  if (greedy_) {
    Eigen::VectorXf masked = logp.col(0);
    for (Eigen::Index j = 0; j < masked.size(); ++j) {
      if (!mask(j, 0)) masked[j] = static_cast<float>(kMaskedLogit);
    }
    return Argmax<float>(masked);
  }
  const Eigen::VectorXf probs = logp.col(0).array().exp();
  return nn::SampleCategorical<float>(probs, rng_);
}

AgentSpec AgentSpec::Parse(const std::string& text) {
  std::string lower = text;
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "random") return {Kind::kRandom, ""};
  if (lower == "osla") return {Kind::kOsla, ""};
  if (lower.rfind("ppo:", 0) == 0 && text.size() > 4) return {Kind::kPolicy, text.substr(4)};
  throw ConfigError("unknown agent '" + text + "' (expected random, osla or ppo:<checkpoint>)");
}

std::string AgentSpec::ToString() const {
  switch (kind) {
    case Kind::kRandom:
      return "random";
    case Kind::kOsla:
      return "osla";
    case Kind::kPolicy:
      return "ppo:" + checkpoint;
  }
  return "?";
}

std::unique_ptr<Agent> MakeAgent(const AgentSpec& spec, Seed seed, GameId game, int num_players) {
  switch (spec.kind) {
    case AgentSpec::Kind::kRandom:
      return std::make_unique<RandomAgent>(seed);
    case AgentSpec::Kind::kOsla:
      return std::make_unique<OslaAgent>(seed);
    case AgentSpec::Kind::kPolicy: {
      auto ckpt = nn::LoadCheckpoint(spec.checkpoint);
      const GameSpec gs = GetGameSpec(game, num_players);
      if (ckpt.net.shape().observation_shape != gs.observation_shape ||
          ckpt.net.shape().actions != gs.action_count) {
        throw ConfigError("checkpoint " + spec.checkpoint + " does not fit " +
                          std::string(GameName(game)) + " with " + std::to_string(num_players) +
                          " players");
      }
      auto net = std::make_shared<const nn::PolicyNet<float>>(std::move(ckpt.net));
      return std::make_unique<PolicyAgent>(std::move(net), seed, spec.ToString());
    }
  }
  throw ConfigError("unknown agent kind");
}

}  // namespace tabletop
