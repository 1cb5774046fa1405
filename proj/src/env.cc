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

#include "tabletop/env.h"

#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include "tabletop/errors.h"
#include "tabletop/observation.h"

namespace tabletop {
namespace {

Outcome ParseOutcome(const std::string& text) {
  for (Outcome o : {Outcome::kWin, Outcome::kTie, Outcome::kLoss}) {
    if (text == OutcomeName(o)) return o;
  }
  throw std::runtime_error("bad outcome '" + text + "'");
}

double MeanOf(const std::vector<double>& v) {
  double sum = 0.0;
  for (double x : v) sum += x;
  return v.empty() ? 0.0 : sum / static_cast<double>(v.size());
}

double StandardError(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double mean = MeanOf(v);
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  const double n = static_cast<double>(v.size());
  return std::sqrt(ss / (n - 1.0) / n);
}

}  // namespace

void EnvConfig::Validate() {
  CheckPlayerCount(game, num_players);
  if (opponents.empty()) opponents.assign(num_players - 1, AgentSpec{});
  if (static_cast<int>(opponents.size()) == 1 && num_players > 2) {
    opponents.assign(num_players - 1, opponents.front());
  }
  if (static_cast<int>(opponents.size()) != num_players - 1) {
    throw ConfigError("expected " + std::to_string(num_players - 1) + " opponents, got " +
                      std::to_string(opponents.size()));
  }
  if (learner_seat < 0 || learner_seat >= num_players) {
    throw ConfigError("learner seat " + std::to_string(learner_seat) + " outside 0.." +
                      std::to_string(num_players - 1));
  }
  if (max_decisions < 0) throw ConfigError("max_decisions must be >= 0");
}

nlohmann::json EnvConfig::ToJson() const {
  std::vector<std::string> opp;
  for (const auto& o : opponents) opp.push_back(o.ToString());
  return {{"game", GameName(game)},   {"players", num_players},
          {"opponents", opp},         {"seed", seed},
          {"learner_seat", learner_seat}, {"rotate_seats", rotate_seats},
          {"max_decisions", max_decisions}, {"auto_reset", auto_reset}};
}

Env::Env(EnvConfig config)
    : config_((config.Validate(), std::move(config))),
      spec_(GetGameSpec(config_.game, config_.num_players)),
      tree_(BuildTree(config_.game, config_.num_players)) {
  for (int i = 0; i < config_.num_players - 1; ++i) {
    opponents_.push_back(MakeAgent(config_.opponents[i], DeriveSeed(config_.seed, 1 + i),
                                   config_.game, config_.num_players));
  }
}

void Env::StartEpisode() {
  // Loops only if a game could end before the learner's first decision.
  do {
    const long k = episode_++;
    seat_ = config_.rotate_seats ? static_cast<int>(k % config_.num_players) : config_.learner_seat;
    episode_seed_ = DeriveSeed(DeriveSeed(config_.seed, 0), static_cast<std::uint64_t>(k));
    state_ = NewGame(config_.game, config_.num_players, episode_seed_);
    episode_length_ = 0;
    actions_.clear();
    done_ = false;
    AdvanceOpponents();
  } while (state_->is_terminal() || CapReached());
}

bool Env::CapReached() const {
  return config_.max_decisions > 0 && !state_->is_terminal() &&
         state_->turn_counter() >= config_.max_decisions;
}

void Env::AdvanceOpponents() {
  while (!state_->is_terminal() && !CapReached() && state_->current_player() != seat_) {
    const int p = state_->current_player();
    const int idx = p < seat_ ? p : p - 1;
    const Action a = opponents_[idx]->Act(*state_);
    state_->Apply(a);
    actions_.push_back(a);
  }
}

void Env::Observe(std::span<float> obs, std::span<std::uint8_t> mask) const {
  VectorizeInto(*state_, seat_, obs);
  if (static_cast<int>(mask.size()) != tree_.leaf_count()) {
    throw ShapeError("mask buffer holds " + std::to_string(mask.size()) + " entries, need " +
                     std::to_string(tree_.leaf_count()));
  }
  std::fill(mask.begin(), mask.end(), 0);
  if (state_->is_terminal()) return;
  for (Action a : state_->LegalActions()) mask[a] = 1;
}

EpisodeInfo Env::Finish() {
  EpisodeInfo info;
  info.episode = episode_ - 1;
  info.length = episode_length_;
  info.seat = seat_;
  info.seed = episode_seed_;
  if (state_->is_terminal()) {
    info.result = state_->status().results[seat_];
    info.ret = state_->Reward(seat_);
  } else {
    info.result = Outcome::kTie;
    info.ret = 0.0;
    info.truncated = true;
  }
  done_ = true;
  return info;
}

void Env::ResetInto(std::span<float> obs, std::span<std::uint8_t> mask) {
  StartEpisode();
  Observe(obs, mask);
}

Env::StepOutcome Env::StepInto(Action action, std::span<float> obs,
                               std::span<std::uint8_t> mask) {
  if (done_) {
    throw TerminalStateError("episode finished; call Reset before stepping again");
  }
  state_->Apply(action);
  actions_.push_back(action);
  ++episode_length_;
  ++learner_steps_;
  AdvanceOpponents();
  StepOutcome out;
  if (state_->is_terminal() || CapReached()) {
    out.info = Finish();
    out.reward = out.info->ret;
    out.done = true;
    if (config_.auto_reset) StartEpisode();
  }
  Observe(obs, mask);
  return out;
}

StepResult Env::Reset() {
  StepResult r;
  r.observation.resize(spec_.observation_size);
  r.mask.bits.resize(tree_.leaf_count());
  ResetInto(r.observation, r.mask.bits);
  return r;
}

StepResult Env::Step(Action action) {
  StepResult r;
  r.observation.resize(spec_.observation_size);
  r.mask.bits.resize(tree_.leaf_count());
  StepOutcome o = StepInto(action, r.observation, r.mask.bits);
  r.reward = o.reward;
  r.done = o.done;
  r.info = o.info;
  return r;
}

VecEnv::VecEnv(const EnvConfig& config, int num_envs) {
  if (num_envs < 1) throw ConfigError("need at least one environment");
  for (int i = 0; i < num_envs; ++i) {
    EnvConfig c = config;
    c.seed = DeriveSeed(config.seed, static_cast<std::uint64_t>(i));
    envs_.push_back(std::make_unique<Env>(std::move(c)));
  }
}

std::vector<VecEnv::SlotResult> VecEnv::Reset() {
  std::vector<SlotResult> out(envs_.size());
  for (std::size_t i = 0; i < envs_.size(); ++i) {
    try {
      out[i].result = envs_[i]->Reset();
    } catch (...) {
      out[i].error = std::current_exception();
    }
  }
  return out;
}

std::vector<VecEnv::SlotResult> VecEnv::Step(std::span<const Action> actions) {
  if (actions.size() != envs_.size()) {
    throw ShapeError("got " + std::to_string(actions.size()) + " actions for " +
                     std::to_string(envs_.size()) + " environments");
  }
  std::vector<SlotResult> out(envs_.size());
  for (std::size_t i = 0; i < envs_.size(); ++i) {
    try {
      out[i].result = envs_[i]->Step(actions[i]);
    } catch (...) {
      out[i].error = std::current_exception();
    }
  }
  return out;
}

nlohmann::json EpisodeMetrics::ToJson() const {
  return {{"episodes", episodes},       {"window", window},
          {"win_rate", win_rate},       {"win_se", win_se},
          {"tie_rate", tie_rate},       {"loss_rate", loss_rate},
          {"mean_return", mean_return}, {"return_se", return_se},
          {"mean_length", mean_length}, {"length_se", length_se},
          {"learner_steps", learner_steps}, {"seconds", seconds},
          {"fps", fps}};
}

EpisodeMetrics Summarize(const std::vector<EpisodeInfo>& episodes, long window) {
  EpisodeMetrics m;
  m.episodes = static_cast<long>(episodes.size());
  const long n = window > 0 ? std::min(window, m.episodes) : m.episodes;
  m.window = n;
  std::vector<double> wins, returns, lengths;
  long ties = 0, losses = 0;
  for (long i = m.episodes - n; i < m.episodes; ++i) {
    const EpisodeInfo& e = episodes[i];
    wins.push_back(e.result == Outcome::kWin ? 1.0 : 0.0);
    ties += e.result == Outcome::kTie;
    losses += e.result == Outcome::kLoss;
    returns.push_back(e.ret);
    lengths.push_back(e.length);
  }
  if (n == 0) return m;
  m.win_rate = MeanOf(wins);
  m.win_se = StandardError(wins);
  m.tie_rate = static_cast<double>(ties) / static_cast<double>(n);
  m.loss_rate = static_cast<double>(losses) / static_cast<double>(n);
  m.mean_return = MeanOf(returns);
  m.return_se = StandardError(returns);
  m.mean_length = MeanOf(lengths);
  m.length_se = StandardError(lengths);
  return m;
}

nlohmann::json EpisodeRecord::ToJson() const {
  return {{"format", "tabletop-episode"}, {"version", kEpisodeLogVersion},
          {"game", GameName(game)},       {"players", num_players},
          {"seed", seed},                 {"actions", actions},
          {"final_hash", HashToHex(final_hash)}};
}

EpisodeRecord EpisodeRecord::FromJson(const nlohmann::json& j) {
  if (j.value("format", "") != "tabletop-episode") {
    throw std::runtime_error("not an episode record");
  }
  if (j.value("version", 0) != kEpisodeLogVersion) {
    throw std::runtime_error("unsupported episode record version " +
                             std::to_string(j.value("version", 0)));
  }
  EpisodeRecord r;
  r.game = ParseGameId(j.at("game").get<std::string>());
  r.num_players = j.at("players").get<int>();
  r.seed = j.at("seed").get<Seed>();
  r.actions = j.at("actions").get<std::vector<Action>>();
  r.final_hash = std::stoull(j.at("final_hash").get<std::string>(), nullptr, 16);
  return r;
}

std::uint64_t ReplayRecord(const EpisodeRecord& record) {
  auto state = NewGame(record.game, record.num_players, record.seed);
  for (std::size_t i = 0; i < record.actions.size(); ++i) {
    try {
      state->Apply(record.actions[i]);
    } catch (const std::exception& e) {
      throw std::runtime_error("replay failed at decision " + std::to_string(i) + ": " + e.what());
    }
  }
  return state->Hash();
}

EvalReport Evaluate(const AgentSpec& learner, EnvConfig config, long episodes, long window,
                    bool keep_records) {
  if (episodes < 1) throw ConfigError("evaluation needs at least one episode");
  config.auto_reset = false;
  Env env(config);
  auto agent = MakeAgent(learner, DeriveSeed(env.config().seed, 1000), env.config().game,
                         env.config().num_players);
  EvalReport report;
  const auto start = std::chrono::steady_clock::now();
  env.Reset();
  while (static_cast<long>(report.episodes.size()) < episodes) {
    StepResult r = env.Step(agent->Act(env.state()));
    if (!r.done) continue;
    report.episodes.push_back(*r.info);
    if (keep_records) {
      report.records.push_back({env.config().game, env.config().num_players, env.episode_seed(),
                                env.episode_actions(), env.state().Hash()});
    }
    if (static_cast<long>(report.episodes.size()) < episodes) env.Reset();
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  report.metrics = Summarize(report.episodes, window);
  report.metrics.learner_steps = env.learner_steps();
  report.metrics.seconds = seconds;
  report.metrics.fps = seconds > 0 ? static_cast<double>(env.learner_steps()) / seconds : 0.0;
  return report;
}

std::string EpisodeCsvRow(const EpisodeInfo& e) {
  std::ostringstream os;
  os << e.episode << ',' << OutcomeName(e.result) << ',' << e.ret << ',' << e.length << ','
     << e.seat << ',' << e.seed;
  return os.str();
}

void WriteEpisodeCsv(const std::string& path, const std::vector<EpisodeInfo>& episodes) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << kEpisodeCsvHeader << '\n';
  for (const auto& e : episodes) out << EpisodeCsvRow(e) << '\n';
}

std::vector<EpisodeInfo> ReadEpisodeCsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::string line;
  std::getline(in, line);
  if (line != kEpisodeCsvHeader) throw std::runtime_error(path + ": unexpected header");
  std::vector<EpisodeInfo> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(row, cell, ',')) cells.push_back(cell);
    if (cells.size() != 6) throw std::runtime_error(path + ": bad row '" + line + "'");
    EpisodeInfo e;
    e.episode = std::stol(cells[0]);
    e.result = ParseOutcome(cells[1]);
    e.ret = std::stod(cells[2]);
    e.length = std::stoi(cells[3]);
    e.seat = std::stoi(cells[4]);
    e.seed = std::stoull(cells[5]);
    out.push_back(e);
  }
  return out;
}

}  // namespace tabletop
