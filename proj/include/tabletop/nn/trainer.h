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

#ifndef TABLETOP_NN_TRAINER_H_
#define TABLETOP_NN_TRAINER_H_

#include <functional>
#include <string>
#include <vector>

#include "json.hpp"
#include "tabletop/env.h"
#include "tabletop/nn/ppo.h"

namespace tabletop::nn {

struct PpoConfig {
  double learning_rate = 2.5e-4;
  bool anneal_lr = true;
  double gamma = 0.99;
  double gae_lambda = 0.95;
  double clip = 0.2;
  int epochs = 4;
  int minibatches = 4;
  double entropy_coef = 0.01;
  double value_coef = 0.5;
  double max_grad_norm = 0.5;
  bool clip_value_loss = true;
  bool normalize_advantages = true;
  int rollout_length = 128;
  int num_envs = 8;
  long total_steps = 1'000'000;
  int hidden = 64;
  int conv_channels = 32;

  // Throws ConfigError naming the offending field.
  void Validate() const;
  long batch_size() const { return static_cast<long>(rollout_length) * num_envs; }
  long updates() const { return (total_steps + batch_size() - 1) / batch_size(); }
  nlohmann::json ToJson() const;
  static PpoConfig FromJson(const nlohmann::json& j);
};

// Per-step storage for num_envs environments x rollout_length steps.
// Column index = step * num_envs + env.
struct RolloutBuffer {
  RolloutBuffer(int steps, int envs, int obs_size, int actions);

  int steps;
  int envs;
  Matrix<float> observations;  // obs_size x (steps*envs)
  MaskMatrix masks;            // actions x (steps*envs)
  std::vector<int> actions;
  Matrix<float> log_probs;  // steps x envs
  Matrix<float> values;
  Matrix<float> rewards;
  Eigen::Array<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic> dones;

  Eigen::Index column(int step, int env) const {
    return static_cast<Eigen::Index>(step) * envs + env;
  }
};

struct MetricsRow {
  long update = 0;
  long step = 0;
  long episodes = 0;
  double win_rate = 0.0;
  double win_se = 0.0;
  double mean_return = 0.0;
  double mean_length = 0.0;
  double fps = 0.0;
  double learning_rate = 0.0;
  LossStats loss;
};

inline constexpr char kMetricsCsvHeader[] =
    "update,step,episodes,win_rate,win_se,return,ep_length,fps,policy_loss,value_loss,"
    "entropy,approx_kl,clip_fraction,learning_rate";
std::string MetricsCsvRow(const MetricsRow& row);

struct TrainConfig {
  EnvConfig env;
  PpoConfig ppo;
  // Directory for metrics.csv, episodes.csv and checkpoints; empty keeps
  // everything in memory.
  std::string out_dir;
  // Learner steps between intermediate checkpoints; 0 writes only the final one.
  long checkpoint_every = 0;
  long metrics_window = 100;
  nlohmann::json ToJson() const;
};

struct TrainResult {
  PolicyNet<float> net;
  std::vector<MetricsRow> metrics;
  std::vector<EpisodeInfo> episodes;
  EpisodeMetrics final_metrics;  // last `metrics_window` episodes, whole-run FPS
  long learner_steps = 0;
  long illegal_actions = 0;
  double seconds = 0.0;
  std::string checkpoint_path;
};

// Collect -> GAE -> clipped PPO update until ppo.total_steps learner steps.
// Environment failures are rethrown as std::runtime_error naming the game,
// seed, slot and step. Sampling an action outside the mask is a hard error.
TrainResult Train(const TrainConfig& config,
                  const std::function<void(const MetricsRow&)>& on_update = {});

}  // namespace tabletop::nn

#endif  // TABLETOP_NN_TRAINER_H_
