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

#include "tabletop/nn/trainer.h"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include "tabletop/errors.h"
#include "tabletop/nn/checkpoint.h"

namespace tabletop::nn {
namespace {

void Require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError("invalid PPO config: " + what);
}

// Separate streams per consumer so changing one never shifts another.
enum Stream : std::uint64_t { kEnvStream = 11, kInitStream, kSampleStream, kShuffleStream };

}  // namespace

void PpoConfig::Validate() const {
  Require(learning_rate > 0, "learning_rate must be > 0");
  Require(gamma >= 0 && gamma <= 1, "gamma must be in [0, 1]");
  Require(gae_lambda >= 0 && gae_lambda <= 1, "gae_lambda must be in [0, 1]");
  Require(clip > 0, "clip must be > 0");
  Require(epochs >= 1, "epochs must be >= 1");
  Require(minibatches >= 1, "minibatches must be >= 1");
  Require(entropy_coef >= 0, "entropy_coef must be >= 0");
  Require(value_coef >= 0, "value_coef must be >= 0");
  Require(max_grad_norm > 0, "max_grad_norm must be > 0");
  Require(rollout_length >= 1, "rollout_length must be >= 1");
  Require(num_envs >= 1, "num_envs must be >= 1");
  Require(total_steps >= 1, "total_steps must be >= 1");
  Require(hidden >= 1, "hidden must be >= 1");
  Require(conv_channels >= 1, "conv_channels must be >= 1");
  Require(batch_size() >= minibatches, "rollout_length * num_envs must be >= minibatches");
}

nlohmann::json PpoConfig::ToJson() const {
  return {{"learning_rate", learning_rate},
          {"anneal_lr", anneal_lr},
          {"gamma", gamma},
          {"gae_lambda", gae_lambda},
          {"clip", clip},
          {"epochs", epochs},
          {"minibatches", minibatches},
          {"entropy_coef", entropy_coef},
          {"value_coef", value_coef},
          {"max_grad_norm", max_grad_norm},
          {"clip_value_loss", clip_value_loss},
          {"normalize_advantages", normalize_advantages},
          {"rollout_length", rollout_length},
          {"num_envs", num_envs},
          {"total_steps", total_steps},
          {"hidden", hidden},
          {"conv_channels", conv_channels}};
}

PpoConfig PpoConfig::FromJson(const nlohmann::json& j) {
  PpoConfig c;
  c.learning_rate = j.value("learning_rate", c.learning_rate);
  c.anneal_lr = j.value("anneal_lr", c.anneal_lr);
  c.gamma = j.value("gamma", c.gamma);
  c.gae_lambda = j.value("gae_lambda", c.gae_lambda);
  c.clip = j.value("clip", c.clip);
  c.epochs = j.value("epochs", c.epochs);
  c.minibatches = j.value("minibatches", c.minibatches);
  c.entropy_coef = j.value("entropy_coef", c.entropy_coef);
  c.value_coef = j.value("value_coef", c.value_coef);
  c.max_grad_norm = j.value("max_grad_norm", c.max_grad_norm);
  c.clip_value_loss = j.value("clip_value_loss", c.clip_value_loss);
  c.normalize_advantages = j.value("normalize_advantages", c.normalize_advantages);
  c.rollout_length = j.value("rollout_length", c.rollout_length);
  c.num_envs = j.value("num_envs", c.num_envs);
  c.total_steps = j.value("total_steps", c.total_steps);
  c.hidden = j.value("hidden", c.hidden);
  c.conv_channels = j.value("conv_channels", c.conv_channels);
  return c;
}

RolloutBuffer::RolloutBuffer(int t, int n, int obs_size, int action_count)
    : steps(t),
      envs(n),
      observations(obs_size, static_cast<Eigen::Index>(t) * n),
      masks(action_count, static_cast<Eigen::Index>(t) * n),
      actions(static_cast<std::size_t>(t) * n),
      log_probs(t, n),
      values(t, n),
      rewards(t, n),
      dones(t, n) {}

std::string MetricsCsvRow(const MetricsRow& r) {
  std::ostringstream os;
  os.precision(8);
  os << r.update << ',' << r.step << ',' << r.episodes << ',' << r.win_rate << ',' << r.win_se
     << ',' << r.mean_return << ',' << r.mean_length << ',' << r.fps << ','
     << r.loss.policy_loss << ',' << r.loss.value_loss << ',' << r.loss.entropy << ','
     << r.loss.approx_kl << ',' << r.loss.clip_fraction << ',' << r.learning_rate;
  return os.str();
}

nlohmann::json TrainConfig::ToJson() const {
  return {{"env", env.ToJson()},
          {"ppo", ppo.ToJson()},
          {"out_dir", out_dir},
          {"checkpoint_every", checkpoint_every},
          {"metrics_window", metrics_window}};
}

TrainResult Train(const TrainConfig& config,
                  const std::function<void(const MetricsRow&)>& on_update) {
  const PpoConfig& ppo = config.ppo;
  ppo.Validate();
  EnvConfig env_config = config.env;
  env_config.Validate();
  env_config.auto_reset = true;
  const Seed seed = env_config.seed;
  env_config.seed = DeriveSeed(seed, kEnvStream);

  const GameSpec spec = GetGameSpec(env_config.game, env_config.num_players);
  const int obs_size = spec.observation_size;
  const int action_count = spec.action_count;
  const int n = ppo.num_envs;
  const int t_max = ppo.rollout_length;

  VecEnv venv(env_config, n);
  PolicyNet<float> net(
      DefaultNetShape(spec.observation_shape, action_count, ppo.hidden, ppo.conv_channels));
  {
    Rng init(DeriveSeed(seed, kInitStream));
    net.Initialize(init);
  }
  Rng sample_rng(DeriveSeed(seed, kSampleStream));
  Rng shuffle_rng(DeriveSeed(seed, kShuffleStream));
  Adam<float> adam(net.parameter_count());
  RolloutBuffer buffer(t_max, n, obs_size, action_count);
  PpoLossConfig loss_config{ppo.clip, ppo.entropy_coef, ppo.value_coef, ppo.clip_value_loss,
                            ppo.normalize_advantages};

  TrainResult result{net, {}, {}, {}, 0, 0, 0.0, ""};
  const nlohmann::json meta_base = {{"game", GameName(env_config.game)},
                                    {"players", env_config.num_players},
                                    {"seed", seed},
                                    {"train", config.ToJson()}};
  std::ofstream metrics_csv;
  if (!config.out_dir.empty()) {
    std::filesystem::create_directories(config.out_dir);
    metrics_csv.open(std::filesystem::path(config.out_dir) / "metrics.csv");
    if (!metrics_csv) throw std::runtime_error("cannot write metrics in " + config.out_dir);
    metrics_csv << kMetricsCsvHeader << '\n';
  }

  Matrix<float> next_obs(obs_size, n);
  MaskMatrix next_mask(action_count, n);
  auto obs_span = [&](int i) { return std::span<float>(next_obs.col(i).data(), obs_size); };
  auto mask_span = [&](int i) {
    return std::span<std::uint8_t>(next_mask.col(i).data(), action_count);
  };
  auto env_failure = [&](int i, const std::exception& e) {
    return std::runtime_error(std::string(GameName(env_config.game)) + " env slot " +
                              std::to_string(i) + " (run seed " + std::to_string(seed) +
                              ", episode seed " + std::to_string(venv.env(i).episode_seed()) +
                              ") failed at learner step " + std::to_string(result.learner_steps) +
                              ": " + e.what());
  };
  for (int i = 0; i < n; ++i) {
    try {
      venv.env(i).ResetInto(obs_span(i), mask_span(i));
    } catch (const std::exception& e) {
      throw env_failure(i, e);
    }
  }

  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };
  const long updates = ppo.updates();
  long next_checkpoint = config.checkpoint_every > 0 ? config.checkpoint_every : -1;
  auto save = [&](const std::string& path) {
    nlohmann::json meta = meta_base;
    meta["step"] = result.learner_steps;
    SaveCheckpoint(path, net, meta);
  };

  for (long update = 1; update <= updates; ++update) {
    const double lr =
        ppo.anneal_lr
            ? ppo.learning_rate * (1.0 - static_cast<double>(update - 1) / static_cast<double>(updates))
            : ppo.learning_rate;

    // Collect.
    for (int t = 0; t < t_max; ++t) {
      const auto out = net.Forward(next_obs);
      const Matrix<float> logp = MaskedLogSoftmax<float>(out.logits, next_mask);
      for (int i = 0; i < n; ++i) {
        const Eigen::Index col = buffer.column(t, i);
        const Vector<float> probs = logp.col(i).array().exp();
        const int a = SampleCategorical<float>(probs, sample_rng);
        if (!next_mask(a, i)) {
          ++result.illegal_actions;
          throw std::runtime_error("sampled masked-out action " + std::to_string(a) +
                                   " in env slot " + std::to_string(i));
        }
        buffer.observations.col(col) = next_obs.col(i);
        buffer.masks.col(col) = next_mask.col(i);
        buffer.actions[col] = a;
        buffer.log_probs(t, i) = logp(a, i);
        buffer.values(t, i) = out.values(i);
        Env::StepOutcome step;
        try {
          step = venv.env(i).StepInto(a, obs_span(i), mask_span(i));
        } catch (const std::exception& e) {
          throw env_failure(i, e);
        }
        ++result.learner_steps;
        buffer.rewards(t, i) = static_cast<float>(step.reward);
        buffer.dones(t, i) = step.done ? 1 : 0;
        if (step.info) result.episodes.push_back(*step.info);
      }
    }

    // Advantages.
    const RowVector<float> bootstrap = net.Forward(next_obs).values;
    const GaeResult<float> gae =
        ComputeGae<float>(buffer.rewards, buffer.values, buffer.dones, bootstrap,
                          static_cast<float>(ppo.gamma), static_cast<float>(ppo.gae_lambda));

    // Optimize.
    const long batch = ppo.batch_size();
    std::vector<Eigen::Index> order(batch);
    std::iota(order.begin(), order.end(), 0);
    LossStats mean_stats;
    int minibatch_count = 0;
    Vector<float> grad;
    for (int epoch = 0; epoch < ppo.epochs; ++epoch) {
      shuffle_rng.Shuffle(std::span<Eigen::Index>(order));
      for (int m = 0; m < ppo.minibatches; ++m) {
        const long begin = batch * m / ppo.minibatches;
        const long end = batch * (m + 1) / ppo.minibatches;
        const long size = end - begin;
        PpoBatch<float> mb;
        mb.observations.resize(obs_size, size);
        mb.masks.resize(action_count, size);
        mb.actions.resize(size);
        mb.old_log_probs.resize(size);
        mb.advantages.resize(size);
        mb.returns.resize(size);
        mb.old_values.resize(size);
        for (long k = 0; k < size; ++k) {
          const Eigen::Index col = order[begin + k];
          const Eigen::Index step = col / n;
          const Eigen::Index env = col % n;
          mb.observations.col(k) = buffer.observations.col(col);
          mb.masks.col(k) = buffer.masks.col(col);
          mb.actions[k] = buffer.actions[col];
          mb.old_log_probs[k] = buffer.log_probs(step, env);
          mb.advantages[k] = gae.advantages(step, env);
          mb.returns[k] = gae.returns(step, env);
          mb.old_values[k] = buffer.values(step, env);
        }
        LossStats stats;
        try {
          stats = PpoLoss<float>(net, mb, loss_config, &grad);
        } catch (const std::runtime_error& e) {
          throw std::runtime_error("update " + std::to_string(update) + " epoch " +
                                   std::to_string(epoch) + " minibatch " + std::to_string(m) +
                                   ": " + e.what());
        }
        ClipGradNorm<float>(grad, static_cast<float>(ppo.max_grad_norm));
        adam.Step(net.parameters(), grad, lr);
        mean_stats.loss += stats.loss;
        mean_stats.policy_loss += stats.policy_loss;
        mean_stats.value_loss += stats.value_loss;
        mean_stats.entropy += stats.entropy;
        mean_stats.approx_kl += stats.approx_kl;
        mean_stats.clip_fraction += stats.clip_fraction;
        mean_stats.mean_ratio += stats.mean_ratio;
        ++minibatch_count;
      }
    }
    const double k = minibatch_count;
    mean_stats.loss /= k;
    mean_stats.policy_loss /= k;
    mean_stats.value_loss /= k;
    mean_stats.entropy /= k;
    mean_stats.approx_kl /= k;
    mean_stats.clip_fraction /= k;
    mean_stats.mean_ratio /= k;

    const EpisodeMetrics window = Summarize(result.episodes, config.metrics_window);
    MetricsRow row;
    row.update = update;
    row.step = result.learner_steps;
    row.episodes = window.episodes;
    row.win_rate = window.win_rate;
    row.win_se = window.win_se;
    row.mean_return = window.mean_return;
    row.mean_length = window.mean_length;
    const double secs = elapsed();
    row.fps = secs > 0 ? static_cast<double>(result.learner_steps) / secs : 0.0;
    row.learning_rate = lr;
    row.loss = mean_stats;
    result.metrics.push_back(row);
    if (metrics_csv.is_open()) metrics_csv << MetricsCsvRow(row) << '\n' << std::flush;
    if (on_update) on_update(row);

    if (!config.out_dir.empty() && next_checkpoint > 0 && result.learner_steps >= next_checkpoint &&
        update < updates) {
      save((std::filesystem::path(config.out_dir) / "checkpoints" /
            ("step_" + std::to_string(result.learner_steps) + ".ckpt"))
               .string());
      while (next_checkpoint <= result.learner_steps) next_checkpoint += config.checkpoint_every;
    }
  }

  result.seconds = elapsed();
  result.final_metrics = Summarize(result.episodes, config.metrics_window);
  result.final_metrics.learner_steps = result.learner_steps;
  result.final_metrics.seconds = result.seconds;
  result.final_metrics.fps =
      result.seconds > 0 ? static_cast<double>(result.learner_steps) / result.seconds : 0.0;
  if (!config.out_dir.empty()) {
    result.checkpoint_path = (std::filesystem::path(config.out_dir) / "final.ckpt").string();
    save(result.checkpoint_path);
    WriteEpisodeCsv((std::filesystem::path(config.out_dir) / "episodes.csv").string(),
                    result.episodes);
  }
  result.net = std::move(net);
  return result;
}

}  // namespace tabletop::nn
