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

// Command-line front end: play, train, eval, bench, actions, observe, replay.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tabletop/action_space.h"
#include "tabletop/agents.h"
#include "tabletop/env.h"
#include "tabletop/errors.h"
#include "tabletop/game_spec.h"
#include "tabletop/nn/trainer.h"
#include "tabletop/observation.h"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace tabletop;

namespace {

constexpr int kManifestVersion = 1;

struct Common {
  std::string game = "TicTacToe";
  int players = 2;
  std::string opponent = "random";
  Seed seed = 0;
  int seeds = 1;
  bool rotate_seats = false;
  std::string out;
};

std::string DefaultOutRoot() {
  const char* env = std::getenv("TABLETOP_OUT");
  return env != nullptr && *env != '\0' ? env : "runs";
}

void AddGameOptions(CLI::App* cmd, Common& c) {
  cmd->add_option("--game", c.game, "TicTacToe, Diamant, ExplodingKittens, LoveLetter, Stratego")
      ->capture_default_str();
  cmd->add_option("--players", c.players, "Number of players")->capture_default_str();
}

void AddRunOptions(CLI::App* cmd, Common& c) {
  AddGameOptions(cmd, c);
  cmd->add_option("--opponent", c.opponent, "random | osla | ppo:<checkpoint>")
      ->capture_default_str();
  cmd->add_option("--seed", c.seed, "Base seed")->capture_default_str();
  cmd->add_option("--seeds", c.seeds, "Number of consecutive seeds starting at --seed")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_flag("--rotate-seats", c.rotate_seats, "Rotate the learner seat every episode");
  cmd->add_option("--out", c.out, "Output root (default $TABLETOP_OUT or ./runs)");
}

EnvConfig MakeEnvConfig(const Common& c, Seed seed) {
  EnvConfig config;
  config.game = ParseGameId(c.game);
  config.num_players = c.players;
  config.opponents.assign(1, AgentSpec::Parse(c.opponent));
  config.seed = seed;
  config.rotate_seats = c.rotate_seats;
  config.Validate();
  return config;
}

// Writes the manifest into a directory named after its content hash and
// returns that directory.
fs::path WriteManifest(const std::string& command, const Common& c, json config) {
  json manifest = {{"format", "tabletop-manifest"},
                   {"version", kManifestVersion},
                   {"command", command},
                   {"config", std::move(config)},
                   {"tabletop_version", TABLETOP_VERSION},
                   {"git", TABLETOP_GIT_STAMP}};
  const std::string id = HashToHex(Fnv1a64(manifest.dump()));
  const fs::path root = c.out.empty() ? fs::path(DefaultOutRoot()) : fs::path(c.out);
  const fs::path dir = root / (command + "-" + id);
  fs::create_directories(dir);
  manifest["run_id"] = id;
  manifest["output_dir"] = fs::absolute(dir).string();
  std::ofstream(dir / "manifest.json") << manifest.dump(2) << '\n';
  return dir;
}

json BaseConfig(const Common& c) {
  Env probe(MakeEnvConfig(c, c.seed));  // reject bad settings before any output exists
  std::vector<Seed> seeds;
  for (int i = 0; i < c.seeds; ++i) seeds.push_back(c.seed + static_cast<Seed>(i));
  return {{"game", GameName(ParseGameId(c.game))},
          {"players", c.players},
          {"opponent", AgentSpec::Parse(c.opponent).ToString()},
          {"seeds", seeds},
          {"rotate_seats", c.rotate_seats}};
}

// Mean and standard error across per-seed values.
json AcrossSeeds(const std::vector<double>& v) {
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  const double se = v.size() > 1 ? std::sqrt(ss / static_cast<double>(v.size() - 1) /
                                             static_cast<double>(v.size()))
                                  : 0.0;
  return {{"mean", mean}, {"se", se}};
}

int RunMatches(const std::string& command, const Common& c, const std::string& agent,
               long episodes, long window) {
  json config = BaseConfig(c);
  MakeAgent(AgentSpec::Parse(agent), 0, ParseGameId(c.game), c.players);
  config["agent"] = AgentSpec::Parse(agent).ToString();
  config["episodes"] = episodes;
  config["window"] = window;
  const fs::path dir = WriteManifest(command, c, config);
  json per_seed = json::array();
  std::vector<double> wins, returns, lengths, fps;
  std::ofstream logs(dir / "episodes.jsonl");
  for (int i = 0; i < c.seeds; ++i) {
    const Seed seed = c.seed + static_cast<Seed>(i);
    EvalReport report =
        Evaluate(AgentSpec::Parse(agent), MakeEnvConfig(c, seed), episodes, window, true);
    WriteEpisodeCsv((dir / ("episodes_seed" + std::to_string(seed) + ".csv")).string(),
                    report.episodes);
    for (const auto& r : report.records) logs << r.ToJson().dump() << '\n';
    json m = report.metrics.ToJson();
    m["seed"] = seed;
    per_seed.push_back(m);
    wins.push_back(report.metrics.win_rate);
    returns.push_back(report.metrics.mean_return);
    lengths.push_back(report.metrics.mean_length);
    fps.push_back(report.metrics.fps);
  }
  json summary = {{"format", "tabletop-summary"},
                  {"version", 1},
                  {"game", GameName(ParseGameId(c.game))},
                  {"agent", AgentSpec::Parse(agent).ToString()},
                  {"opponent", AgentSpec::Parse(c.opponent).ToString()},
                  {"wins", AcrossSeeds(wins)},
                  {"returns", AcrossSeeds(returns)},
                  {"episode_length", AcrossSeeds(lengths)},
                  {"fps", AcrossSeeds(fps)},
                  {"per_seed", per_seed}};
  std::ofstream(dir / "summary.json") << summary.dump(2) << '\n';
  std::cout << summary.dump(2) << '\n' << "output: " << dir.string() << '\n';
  return 0;
}

int RunTrain(const Common& c, const nn::PpoConfig& ppo, long checkpoint_every) {
  ppo.Validate();
  json config = BaseConfig(c);
  config["ppo"] = ppo.ToJson();
  config["checkpoint_every"] = checkpoint_every;
  const fs::path dir = WriteManifest("train", c, config);
  std::vector<double> wins, returns, lengths, fps;
  json per_seed = json::array();
  for (int i = 0; i < c.seeds; ++i) {
    const Seed seed = c.seed + static_cast<Seed>(i);
    nn::TrainConfig tc;
    tc.env = MakeEnvConfig(c, seed);
    tc.ppo = ppo;
    tc.out_dir = (dir / ("seed_" + std::to_string(seed))).string();
    tc.checkpoint_every = checkpoint_every;
    auto last_print = std::chrono::steady_clock::now();
    const auto result = nn::Train(tc, [&](const nn::MetricsRow& row) {
      const auto now = std::chrono::steady_clock::now();
      if (now - last_print < std::chrono::seconds(10)) return;
      last_print = now;
      std::cerr << "seed " << seed << " step " << row.step << " win " << row.win_rate << " len "
                << row.mean_length << " fps " << static_cast<long>(row.fps) << '\n';
    });
    json m = result.final_metrics.ToJson();
    m["seed"] = seed;
    m["checkpoint"] = result.checkpoint_path;
    m["illegal_actions"] = result.illegal_actions;
    per_seed.push_back(m);
    wins.push_back(result.final_metrics.win_rate);
    returns.push_back(result.final_metrics.mean_return);
    lengths.push_back(result.final_metrics.mean_length);
    fps.push_back(result.final_metrics.fps);
  }
  json summary = {{"format", "tabletop-summary"},
                  {"version", 1},
                  {"game", GameName(ParseGameId(c.game))},
                  {"agent", "ppo"},
                  {"opponent", AgentSpec::Parse(c.opponent).ToString()},
                  {"wins", AcrossSeeds(wins)},
                  {"returns", AcrossSeeds(returns)},
                  {"episode_length", AcrossSeeds(lengths)},
                  {"fps", AcrossSeeds(fps)},
                  {"per_seed", per_seed}};
  std::ofstream(dir / "summary.json") << summary.dump(2) << '\n';
  std::cout << summary.dump(2) << '\n' << "output: " << dir.string() << '\n';
  return 0;
}

int RunBench(const Common& c, double seconds, const std::string& mode) {
  const GameId game = ParseGameId(c.game);
  CheckPlayerCount(game, c.players);
  long steps = 0;
  long episodes = 0;
  const auto start = std::chrono::steady_clock::now();
  const auto deadline = start + std::chrono::duration<double>(seconds);
  if (mode == "env") {
    // Learner-perspective steps: a random learner against random opponents,
    // observation and mask produced for every learner step.
    EnvConfig config = MakeEnvConfig(c, c.seed);
    Env env(config);
    RandomAgent learner(DeriveSeed(c.seed, 1000));
    env.Reset();
    while (true) {
      for (int i = 0; i < 256; ++i) {
        const StepResult r = env.Step(learner.Act(env.state()));
        ++steps;
        episodes += r.done;
      }
      if (std::chrono::steady_clock::now() >= deadline) break;
    }
  } else if (mode == "engine") {
    // Raw forward-model decisions, every seat random.
    Rng rng(c.seed);
    auto state = NewGame(game, c.players, DeriveSeed(c.seed, 0));
    while (true) {
      for (int i = 0; i < 256; ++i) {
        if (state->is_terminal()) {
          state = NewGame(game, c.players, DeriveSeed(c.seed, ++episodes));
        }
        state->Apply(RandomAct(*state, rng));
        ++steps;
      }
      if (std::chrono::steady_clock::now() >= deadline) break;
    }
  } else {
    throw ConfigError("unknown bench mode '" + mode + "' (env or engine)");
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const json out = {{"game", GameName(game)},  {"players", c.players},
                    {"mode", mode},            {"steps", steps},
                    {"episodes", episodes},    {"seconds", elapsed},
                    {"steps_per_sec", static_cast<double>(steps) / elapsed}};
  std::cout << out.dump(2) << '\n';
  return 0;
}

int RunActions(const Common& c) {
  const GameId game = ParseGameId(c.game);
  const ActionTree tree = BuildTree(game, c.players);
  json leaves = json::array();
  for (int i = 0; i < tree.leaf_count(); ++i) {
    leaves.push_back({{"index", i}, {"path", tree.LeafPath(i)}});
  }
  json categories = json::array();
  for (int id : tree.categories()) categories.push_back(tree.node(id).label);
  const json out = {{"format", "tabletop-actions"}, {"version", 1},
                    {"game", GameName(game)},       {"players", c.players},
                    {"leaf_count", tree.leaf_count()}, {"categories", categories},
                    {"leaves", leaves}};
  std::cout << out.dump(2) << '\n';
  return 0;
}

int RunObserve(const Common& c, int decisions, int player) {
  const GameId game = ParseGameId(c.game);
  auto state = NewGame(game, c.players, c.seed);
  Rng rng(DeriveSeed(c.seed, 1));
  for (int i = 0; i < decisions && !state->is_terminal(); ++i) state->Apply(RandomAct(*state, rng));
  const int viewer = player >= 0 ? player : (state->is_terminal() ? 0 : state->current_player());
  const VectorObservation obs = Vectorize(*state, viewer);
  json out = {{"format", "tabletop-observation"},
              {"version", 1},
              {"game", GameName(game)},
              {"players", c.players},
              {"seed", c.seed},
              {"decisions", state->turn_counter()},
              {"player", viewer},
              {"shape", obs.shape},
              {"vector", obs.values},
              {"json", ToJson(*state, viewer)}};
  if (!state->is_terminal()) {
    const ActionMask mask = ComputeMask(BuildTree(game, c.players), *state);
    out["legal_actions"] = mask.TrueSet();
  }
  std::cout << out.dump(2) << '\n';
  return 0;
}

int RunReplay(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::string line;
  long checked = 0;
  long mismatched = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const EpisodeRecord record = EpisodeRecord::FromJson(json::parse(line));
    const std::uint64_t hash = ReplayRecord(record);
    ++checked;
    if (hash != record.final_hash) {
      ++mismatched;
      std::cerr << "hash mismatch in record " << checked << ": expected "
                << HashToHex(record.final_hash) << ", replayed " << HashToHex(hash) << '\n';
    }
  }
  if (checked == 0) throw std::runtime_error(path + " holds no episode records");
  std::cout << json{{"records", checked}, {"mismatched", mismatched}}.dump() << '\n';
  return mismatched == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tabletop game engine: simulation, baselines and PPO training"};
  app.set_version_flag("--version", std::string(TABLETOP_VERSION) + " (" + TABLETOP_GIT_STAMP + ")");
  app.require_subcommand(1);

  Common c;
  std::string agent = "random";
  long episodes = 100;
  long window = 100;

  auto* play = app.add_subcommand("play", "Agent-vs-agent matches; writes per-episode CSV");
  AddRunOptions(play, c);
  play->add_option("--agent", agent, "Agent in the learner seat")->capture_default_str();
  play->add_option("--episodes", episodes, "Episodes per seed")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  auto* eval = app.add_subcommand("eval", "Evaluate an agent or checkpoint; writes summary JSON");
  AddRunOptions(eval, c);
  eval->add_option("--agent", agent, "random | osla | ppo:<checkpoint>")->capture_default_str();
  eval->add_option("--episodes", episodes, "Episodes per seed")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  eval->add_option("--window", window, "Episodes aggregated (0 = all)")->capture_default_str();

  nn::PpoConfig ppo;
  long checkpoint_every = 0;
  auto* train = app.add_subcommand("train", "Masked PPO training");
  AddRunOptions(train, c);
  train->add_option("--steps", ppo.total_steps, "Learner steps per seed")->capture_default_str();
  train->add_option("--num-envs", ppo.num_envs, "Parallel environments")->capture_default_str();
  train->add_option("--rollout", ppo.rollout_length, "Steps per env per update")
      ->capture_default_str();
  train->add_option("--lr", ppo.learning_rate, "Adam learning rate")->capture_default_str();
  train->add_option("--checkpoint-every", checkpoint_every,
                    "Learner steps between intermediate checkpoints (0 = final only)");

  double seconds = 10.0;
  std::string mode = "env";
  auto* bench = app.add_subcommand("bench", "Random-playout throughput");
  AddGameOptions(bench, c);
  bench->add_option("--seed", c.seed, "Seed")->capture_default_str();
  bench->add_option("--seconds", seconds, "Wall-clock budget")->capture_default_str();
  bench->add_option("--mode", mode, "env (learner steps) or engine (all decisions)")
      ->capture_default_str();

  auto* actions = app.add_subcommand("actions", "Dump the action tree");
  AddGameOptions(actions, c);

  int decisions = 0;
  int player = -1;
  auto* observe = app.add_subcommand("observe", "Dump an observation after random decisions");
  AddGameOptions(observe, c);
  observe->add_option("--seed", c.seed, "Game seed")->capture_default_str();
  observe->add_option("--step", decisions, "Random decisions to play first")
      ->capture_default_str();
  observe->add_option("--player", player, "Observer (default: player to act)");

  std::string log;
  auto* replay = app.add_subcommand("replay", "Re-execute logged episodes and verify hashes");
  replay->add_option("--log", log, "episodes.jsonl written by play/eval")->required();

  CLI11_PARSE(app, argc, argv);
  try {
    if (*play) return RunMatches("play", c, agent, episodes, 0);
    if (*eval) return RunMatches("eval", c, agent, episodes, window);
    if (*train) return RunTrain(c, ppo, checkpoint_every);
    if (*bench) return RunBench(c, seconds, mode);
    if (*actions) return RunActions(c);
    if (*observe) return RunObserve(c, decisions, player);
    if (*replay) return RunReplay(log);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
