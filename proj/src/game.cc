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

#include "tabletop/game.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdio>

#include "tabletop/errors.h"

namespace tabletop {
namespace {

constexpr std::array<GameId, 5> kAllGames = {
    GameId::kTicTacToe, GameId::kDiamant, GameId::kExplodingKittens,
    GameId::kLoveLetter, GameId::kStratego};

std::string Normalize(std::string_view name) {
  std::string out;
  for (char c : name) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
  }
  return out;
}

std::string JoinedNames() {
  std::string out;
  for (GameId g : kAllGames) {
    if (!out.empty()) out += ", ";
    out += GameName(g);
  }
  return out;
}

}  // namespace

std::span<const GameId> AllGames() { return kAllGames; }

std::string_view GameName(GameId game) {
  switch (game) {
    case GameId::kTicTacToe: return "TicTacToe";
    case GameId::kDiamant: return "Diamant";
    case GameId::kExplodingKittens: return "ExplodingKittens";
    case GameId::kLoveLetter: return "LoveLetter";
    case GameId::kStratego: return "Stratego";
  }
  return "?";
}

GameId ParseGameId(std::string_view name) {
  const std::string key = Normalize(name);
  for (GameId g : kAllGames) {
    if (Normalize(GameName(g)) == key) return g;
  }
  throw ConfigError("unknown game '" + std::string(name) +
                    "'; supported games: " + JoinedNames());
}

std::string_view OutcomeName(Outcome outcome) {
  switch (outcome) {
    case Outcome::kWin: return "win";
    case Outcome::kTie: return "tie";
    case Outcome::kLoss: return "loss";
  }
  return "?";
}

IllegalActionError::IllegalActionError(std::string_view game, int action, int decision)
    : std::runtime_error(std::string(game) + ": illegal action " + std::to_string(action) +
                         " at decision " + std::to_string(decision)),
      action_(action) {}

GameState::GameState(GameId game, int num_players, Seed seed, int max_decisions)
    : game_(game),
      num_players_(num_players),
      max_decisions_(max_decisions),
      rng_(seed) {}

int GameState::current_player() const {
  if (status_.finished) {
    throw TerminalStateError(std::string(GameName(game_)) +
                             ": no current player in a finished game");
  }
  return current_player_;
}

std::vector<Action> GameState::LegalActions() const {
  if (status_.finished) {
    throw TerminalStateError(std::string(GameName(game_)) +
                             ": no legal actions in a finished game");
  }
  return DoLegalActions();
}

bool GameState::IsLegal(Action action) const {
  return !status_.finished && DoIsLegal(action);
}

bool GameState::DoIsLegal(Action action) const {
  const std::vector<Action> legal = DoLegalActions();
  return std::binary_search(legal.begin(), legal.end(), action);
}

void GameState::Apply(Action action) {
  if (status_.finished) {
    throw TerminalStateError(std::string(GameName(game_)) +
                             ": apply on a finished game");
  }
  if (!DoIsLegal(action)) throw IllegalActionError(GameName(game_), action, turn_counter_);
  ++turn_counter_;
  DoApply(action);
  if (!status_.finished && turn_counter_ >= max_decisions_) FinishAllTie();
}

double GameState::Reward(int player) const {
  if (!status_.finished) return 0.0;
  switch (status_.results.at(player)) {
    case Outcome::kWin: return 1.0;
    case Outcome::kTie: return 0.0;
    case Outcome::kLoss: return -1.0;
  }
  return 0.0;
}

nlohmann::json GameState::Serialize() const {
  nlohmann::json j;
  j["game"] = GameName(game_);
  j["players"] = num_players_;
  j["current_player"] = current_player_;
  j["turn_counter"] = turn_counter_;
  j["rng"] = {rng_.state()[0], rng_.state()[1]};
  j["finished"] = status_.finished;
  nlohmann::json results = nlohmann::json::array();
  for (Outcome o : status_.results) results.push_back(OutcomeName(o));
  j["results"] = std::move(results);
  j["state"] = DoSerialize();
  return j;
}

std::uint64_t GameState::Hash() const { return Fnv1a64(Serialize().dump()); }

void GameState::Finish(std::vector<Outcome> results) {
  status_.finished = true;
  status_.results = std::move(results);
}

void GameState::FinishByScores(std::span<const double> scores) {
  const double best = *std::max_element(scores.begin(), scores.end());
  const auto n_best = std::count(scores.begin(), scores.end(), best);
  std::vector<Outcome> results(scores.size(), Outcome::kLoss);
  for (std::size_t p = 0; p < scores.size(); ++p) {
    if (scores[p] == best) results[p] = n_best == 1 ? Outcome::kWin : Outcome::kTie;
  }
  Finish(std::move(results));
}

void GameState::FinishAllTie() {
  Finish(std::vector<Outcome>(num_players_, Outcome::kTie));
}

std::uint64_t Fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string HashToHex(std::uint64_t hash) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

}  // namespace tabletop
