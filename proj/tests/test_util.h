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

#ifndef TABLETOP_TESTS_TEST_UTIL_H_
#define TABLETOP_TESTS_TEST_UTIL_H_

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "json.hpp"
#include "tabletop/game.h"
#include "tabletop/game_spec.h"
#include "tabletop/games/exploding_kittens.h"
#include "tabletop/games/love_letter.h"
#include "tabletop/games/stratego.h"
#include "tabletop/rng.h"

namespace tabletop::testing {

// Visits up to `max_states` non-terminal states reached by uniform random
// play, restarting with fresh seeds when a game ends.
template <typename F>
long RandomStates(GameId game, int players, Seed seed, long max_states, F&& visit) {
  Rng rng(seed);
  long visited = 0;
  for (std::uint64_t episode = 0; visited < max_states; ++episode) {
    auto state = NewGame(game, players, DeriveSeed(seed, episode));
    while (!state->is_terminal() && visited < max_states) {
      visit(*state, rng);
      ++visited;
      const auto legal = state->LegalActions();
      state->Apply(legal[rng.UniformInt(legal.size())]);
    }
  }
  return visited;
}

inline int IndexOfName(std::string_view (*name_of)(int), int count, const std::string& name) {
  for (int i = 0; i < count; ++i) {
    if (name_of(i) == name) return i;
  }
  throw std::runtime_error("unknown name " + name);
}

inline float Sat(double x, double scale) { return static_cast<float>(std::min(x / scale, 1.0)); }

// Rebuilds the documented vector encoding from the JSON view alone. Any
// information the vector carries that the JSON hides makes this fail.
inline std::vector<float> VectorFromJson(GameId game, int n, const nlohmann::json& j) {
  const int observer = j.at("observer").get<int>();
  const auto& spec = GetGameSpec(game, n);
  std::vector<float> v(spec.observation_size, 0.0f);
  switch (game) {
    case GameId::kTicTacToe: {
      const auto board = j.at("board").get<std::vector<int>>();
      for (int c = 0; c < 9; ++c) {
        if (board[c] >= 0) v[c] = board[c] == observer ? 1.0f : -1.0f;
      }
      break;
    }
    case GameId::kDiamant: {
      int treasures = 0;
      int path_gems = 0;
      int last_gems = 0;
      for (const auto& tile : j.at("path")) {
        if (tile.at("kind") == "treasure") {
          ++treasures;
          last_gems = tile.at("gems").get<int>();
          path_gems += last_gems;
        } else {
          v[tile.at("type").get<int>()] = 1.0f;
          last_gems = 0;
        }
      }
      v[5] = treasures / 15.0f;
      v[6] = last_gems / 17.0f;
      v[7] = Sat(path_gems, 20);
      const auto& players = j.at("players");
      int in_cave = 0;
      for (const auto& p : players) in_cave += p.at("in_cave").get<bool>();
      v[8] = Sat(players[observer].at("carried").get<int>(), 20);
      v[9] = Sat(players[observer].at("banked").get<int>(), 50);
      v[10] = players[observer].at("in_cave").get<bool>() ? 1.0f : 0.0f;
      v[11] = static_cast<float>(in_cave) / n;
      v[12] = j.at("round").get<int>() / 4.0f;
      const auto removed = j.at("hazards_removed").get<std::vector<int>>();
      for (int t = 0; t < 5; ++t) v[13 + t] = removed[t] / 2.0f;
      for (int k = 1; k < n; ++k) {
        const auto& q = players[(observer + k) % n];
        v[18 + k - 1] = Sat(q.at("carried").get<int>(), 20);
        v[18 + (n - 1) + k - 1] = q.at("in_cave").get<bool>() ? 1.0f : 0.0f;
      }
      break;
    }
    case GameId::kLoveLetter: {
      using namespace love_letter;
      constexpr int kCounts[] = {5, 2, 2, 2, 2, 1, 1, 1};
      auto card = [](const nlohmann::json& name) {
        return IndexOfName(&CardName, kNumCardTypes, name.get<std::string>());
      };
      for (const auto& c : j.at("hand")) v[card(c)] += 0.5f;
      const auto& players = j.at("players");
      for (const auto& p : players) {
        for (const auto& c : p.at("discards")) v[8 + card(c)] += 1.0f / kCounts[card(c)];
      }
      for (const auto& c : j.at("faceup")) v[16 + card(c)] += 1.0f / kCounts[card(c)];
      v[24] = j.at("deck_size").get<int>() / 16.0f;
      const float target = j.at("tokens_to_win").get<float>();
      for (int k = 0; k < n; ++k) {
        v[25 + k] = std::min(players[(observer + k) % n].at("tokens").get<int>() / target, 1.0f);
      }
      for (int k = 1; k < n; ++k) {
        const auto& q = players[(observer + k) % n];
        v[25 + n + 2 * (k - 1)] = q.at("alive").get<bool>() ? 1.0f : 0.0f;
        v[25 + n + 2 * (k - 1) + 1] = q.at("protected").get<bool>() ? 1.0f : 0.0f;
        if (!q.at("known_card").is_null()) {
          v[25 + n + 2 * (n - 1) + 8 * (k - 1) + card(q.at("known_card"))] = 1.0f;
        }
      }
      break;
    }
    case GameId::kExplodingKittens: {
      using namespace exploding_kittens;
      constexpr int kBox[] = {4, 6, 5, 4, 4, 4, 4, 5, 4, 4, 4, 4, 4};
      auto card = [](const std::string& name) {
        return IndexOfName(&CardName, kNumCardTypes, name);
      };
      int i = 0;
      for (int c = 1; c < kNumCardTypes; ++c) {
        v[i++] = Sat(j.at("hand").at(std::string(CardName(c))).get<int>(), 5);
      }
      const auto& players = j.at("players");
      for (int k = 1; k < n; ++k) v[i++] = Sat(players[(observer + k) % n].at("hand_size").get<int>(), 10);
      for (int k = 1; k < n; ++k) v[i++] = players[(observer + k) % n].at("alive").get<bool>();
      v[i++] = Sat(j.at("deck_size").get<int>(), 50);
      const std::string phases[] = {"turn", "react", "give", "place"};
      for (int p = 0; p < 4; ++p) v[i + p] = j.at("phase") == phases[p] ? 1.0f : 0.0f;
      i += 4;
      v[i++] = j.at("turns_left").get<int>() / 2.0f;
      for (const auto& k : j.at("known_top")) {
        if (!k.is_null()) v[i + card(k.get<std::string>())] = 1.0f;
        i += kNumCardTypes;
      }
      const auto& pending = j.at("pending");
      if (!pending.is_null()) v[i + card(pending.at("card").get<std::string>())] = 1.0f;
      i += kNumCardTypes;
      v[i++] = pending.is_null() ? 0.0f : static_cast<float>(pending.at("nopes").get<int>() % 2);
      v[i++] = !pending.is_null() && pending.at("target").get<int>() == observer ? 1.0f : 0.0f;
      for (int c = 0; c < kNumCardTypes; ++c) {
        const int copies = c == kExplodingKitten ? n - 1 : kBox[c];
        v[i + c] = j.at("discard").at(std::string(CardName(c))).get<int>() / static_cast<float>(copies);
      }
      break;
    }
    case GameId::kStratego: {
      using namespace stratego;
      const auto& cells = j.at("cells");
      for (int cell = 0; cell < kCells; ++cell) {
        const std::string s = cells[cell].get<std::string>();
        auto rank = [](const std::string& name) { return IndexOfName(&RankName, kNumRanks, name); };
        if (s == "lake") {
          v[26 * kCells + cell] = 1.0f;
        } else if (s.rfind("own:", 0) == 0) {
          const bool revealed = s.back() == '*';
          const std::string name = s.substr(4, s.size() - 4 - (revealed ? 1 : 0));
          v[rank(name) * kCells + cell] = 1.0f;
          if (revealed) v[12 * kCells + cell] = 1.0f;
        } else if (s == "opp:?") {
          v[25 * kCells + cell] = 1.0f;
        } else if (s.rfind("opp:", 0) == 0) {
          v[(13 + rank(s.substr(4))) * kCells + cell] = 1.0f;
        }
      }
      break;
    }
  }
  return v;
}

}  // namespace tabletop::testing

#endif  // TABLETOP_TESTS_TEST_UTIL_H_
