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

#ifndef TABLETOP_ENV_H_
#define TABLETOP_ENV_H_

#include <exception>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "tabletop/action_space.h"
#include "tabletop/agents.h"
#include "tabletop/game.h"
#include "tabletop/game_spec.h"

namespace tabletop {

struct EnvConfig {
  GameId game = GameId::kTicTacToe;
  int num_players = 2;
  // One per non-learner seat, in ascending seat order. Empty means random
  // opponents everywhere.
  std::vector<AgentSpec> opponents;
  Seed seed = 0;
  int learner_seat = 0;
  // Seat of episode k becomes k % num_players.
  bool rotate_seats = false;
  // Total decisions (all players) after which an episode is cut and scored
  // as a tie. 0 keeps the game's own cap.
  int max_decisions = 0;
  // On episode end, Step returns the first observation of the next episode.
  bool auto_reset = true;

  // Fills in default opponents and throws ConfigError on bad values.
  void Validate();
  nlohmann::json ToJson() const;
};

struct EpisodeInfo {
  long episode = 0;
  Outcome result = Outcome::kTie;
  double ret = 0.0;
  int length = 0;  // learner decisions
  int seat = 0;
  Seed seed = 0;  // game seed
  bool truncated = false;
};

struct StepResult {
  std::vector<float> observation;
  ActionMask mask;
  double reward = 0.0;
  bool done = false;
  std::optional<EpisodeInfo> info;  // set exactly when done
};

// Single-learner environment. Opponents act inside Reset and Step until the
// learner must decide again or the episode ends.
class Env {
 public:
  explicit Env(EnvConfig config);

  StepResult Reset();
  // Throws IllegalActionError (state unchanged) for an action outside the
  // mask, TerminalStateError after an episode ended without auto-reset.
  StepResult Step(Action action);

  // Cheaper variants used by the trainer: write observation and mask into
  // caller-owned buffers instead of allocating.
  void ResetInto(std::span<float> obs, std::span<std::uint8_t> mask);
  struct StepOutcome {
    double reward = 0.0;
    bool done = false;
    std::optional<EpisodeInfo> info;
  };
  StepOutcome StepInto(Action action, std::span<float> obs, std::span<std::uint8_t> mask);

  const EnvConfig& config() const { return config_; }
  const GameSpec& spec() const { return spec_; }
  const ActionTree& tree() const { return tree_; }
  // Throws std::logic_error before the first Reset.
  const GameState& state() const {
    if (!state_) throw std::logic_error("environment has not been reset");
    return *state_;
  }
  int learner_seat() const { return seat_; }
  bool done() const { return done_; }
  long learner_steps() const { return learner_steps_; }
  long episodes_started() const { return episode_; }
  // Game seed of the current episode.
  Seed episode_seed() const { return episode_seed_; }
  // Decisions taken in the current episode, learner and opponents, in order.
  const std::vector<Action>& episode_actions() const { return actions_; }

 private:
  void StartEpisode();
  void AdvanceOpponents();
  bool CapReached() const;
  void Observe(std::span<float> obs, std::span<std::uint8_t> mask) const;
  EpisodeInfo Finish();

  EnvConfig config_;
  GameSpec spec_;
  ActionTree tree_;
  std::vector<std::unique_ptr<Agent>> opponents_;  // index = seat order skipping learner
  std::unique_ptr<GameState> state_;
  int seat_ = 0;
  long episode_ = 0;
  Seed episode_seed_ = 0;
  int episode_length_ = 0;
  long learner_steps_ = 0;
  bool done_ = true;
  std::vector<Action> actions_;
};

// N environments stepped synchronously. Slot i is seeded with
// DeriveSeed(config.seed, i), so a slot's trajectory does not depend on N.
class VecEnv {
 public:
  VecEnv(const EnvConfig& config, int num_envs);

  struct SlotResult {
    StepResult result;
    std::exception_ptr error;  // set when this slot failed; siblings still stepped
  };

  std::vector<SlotResult> Reset();
  std::vector<SlotResult> Step(std::span<const Action> actions);

  int size() const { return static_cast<int>(envs_.size()); }
  Env& env(int i) { return *envs_[i]; }
  const Env& env(int i) const { return *envs_[i]; }

 private:
  std::vector<std::unique_ptr<Env>> envs_;
};

struct EpisodeMetrics {
  long episodes = 0;  // all episodes seen
  long window = 0;    // episodes aggregated below
  double win_rate = 0.0;
  double win_se = 0.0;
  double tie_rate = 0.0;
  double loss_rate = 0.0;
  double mean_return = 0.0;
  double return_se = 0.0;
  double mean_length = 0.0;
  double length_se = 0.0;
  long learner_steps = 0;
  double seconds = 0.0;
  double fps = 0.0;
  nlohmann::json ToJson() const;
};

// Aggregates over the last `window` episodes (all when window <= 0).
// Standard errors use the sample standard deviation.
EpisodeMetrics Summarize(const std::vector<EpisodeInfo>& episodes, long window = 100);

// Everything needed to re-execute one episode from scratch.
struct EpisodeRecord {
  GameId game = GameId::kTicTacToe;
  int num_players = 2;
  Seed seed = 0;  // game seed
  std::vector<Action> actions;
  std::uint64_t final_hash = 0;

  nlohmann::json ToJson() const;
  // Throws std::runtime_error on an unknown format or version.
  static EpisodeRecord FromJson(const nlohmann::json& j);
};
inline constexpr int kEpisodeLogVersion = 1;

// Rebuilds the game from the record's seed, applies every action and
// returns the final state hash.
std::uint64_t ReplayRecord(const EpisodeRecord& record);

struct EvalReport {
  std::vector<EpisodeInfo> episodes;
  std::vector<EpisodeRecord> records;  // filled when requested
  EpisodeMetrics metrics;
};

// Plays `episodes` full episodes of `learner` against the configured
// opponents without learning. `window` <= 0 aggregates every episode.
EvalReport Evaluate(const AgentSpec& learner, EnvConfig config, long episodes, long window = 100,
                    bool keep_records = false);

inline constexpr char kEpisodeCsvHeader[] = "episode,result,return,length,seat,seed";
std::string EpisodeCsvRow(const EpisodeInfo& info);
void WriteEpisodeCsv(const std::string& path, const std::vector<EpisodeInfo>& episodes);
// Parses a file written by WriteEpisodeCsv.
std::vector<EpisodeInfo> ReadEpisodeCsv(const std::string& path);

}  // namespace tabletop

#endif  // TABLETOP_ENV_H_
