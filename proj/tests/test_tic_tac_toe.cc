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

#include <map>

#include "doctest.h"
#include "tabletop/agents.h"
#include "tabletop/game_spec.h"
#include "tabletop/games/tic_tac_toe.h"
#include "tabletop/observation.h"

using namespace tabletop;

namespace {

// Reference rules written from scratch: board as a 9-char string over
// {'.', 'x', 'o'}, x moves first.
struct Oracle {
  static char Winner(const std::string& b) {
    static constexpr int kLines[8][3] = {{0, 1, 2}, {3, 4, 5}, {6, 7, 8}, {0, 3, 6},
                                         {1, 4, 7}, {2, 5, 8}, {0, 4, 8}, {2, 4, 6}};
    for (const auto& l : kLines) {
      if (b[l[0]] != '.' && b[l[0]] == b[l[1]] && b[l[1]] == b[l[2]]) return b[l[0]];
    }
    return '.';
  }
  static bool Full(const std::string& b) { return b.find('.') == std::string::npos; }
  static bool Terminal(const std::string& b) { return Winner(b) != '.' || Full(b); }
  static char ToMove(const std::string& b) {
    return std::count(b.begin(), b.end(), 'x') == std::count(b.begin(), b.end(), 'o') ? 'x' : 'o';
  }
  static std::vector<int> Moves(const std::string& b) {
    std::vector<int> out;
    if (Terminal(b)) return out;
    for (int i = 0; i < 9; ++i) {
      if (b[i] == '.') out.push_back(i);
    }
    return out;
  }
  // Game value for x under perfect play: +1, 0, -1.
  int Value(const std::string& b) {
    if (auto it = memo.find(b); it != memo.end()) return it->second;
    int v;
    const char w = Winner(b);
    if (w != '.') {
      v = w == 'x' ? 1 : -1;
    } else if (Full(b)) {
      v = 0;
    } else {
      const bool x = ToMove(b) == 'x';
      v = x ? -2 : 2;
      for (int m : Moves(b)) {
        std::string c = b;
        c[m] = ToMove(b);
        const int child = Value(c);
        v = x ? std::max(v, child) : std::min(v, child);
      }
    }
    memo[b] = v;
    return v;
  }
  std::map<std::string, int> memo;
};

std::string Encode(const tic_tac_toe::TicTacToeState& s) {
  std::string b(9, '.');
  for (int i = 0; i < 9; ++i) {
    if (s.board()[i] == 0) b[i] = 'x';
    if (s.board()[i] == 1) b[i] = 'o';
  }
  return b;
}

}  // namespace

TEST_SUITE("tic_tac_toe") {
  TEST_CASE("engine matches the brute-force oracle on every reachable position") {
    Oracle oracle;
    std::map<std::string, bool> seen;
    long positions = 0, terminal = 0, x_wins = 0, o_wins = 0;
    std::vector<std::unique_ptr<GameState>> stack;
    stack.push_back(NewGame(GameId::kTicTacToe, 2, 0));
    while (!stack.empty()) {
      auto s = std::move(stack.back());
      stack.pop_back();
      const auto& t = static_cast<const tic_tac_toe::TicTacToeState&>(*s);
      const std::string b = Encode(t);
      if (seen.count(b)) continue;
      seen[b] = true;
      ++positions;
      REQUIRE(s->is_terminal() == Oracle::Terminal(b));
      if (s->is_terminal()) {
        ++terminal;
        const char w = Oracle::Winner(b);
        const auto& r = s->status().results;
        if (w == 'x') {
          ++x_wins;
          CHECK(r == std::vector<Outcome>{Outcome::kWin, Outcome::kLoss});
        } else if (w == 'o') {
          ++o_wins;
          CHECK(r == std::vector<Outcome>{Outcome::kLoss, Outcome::kWin});
        } else {
          CHECK(r == std::vector<Outcome>{Outcome::kTie, Outcome::kTie});
        }
        continue;
      }
      REQUIRE(s->LegalActions() == Oracle::Moves(b));
      CHECK(s->current_player() == (Oracle::ToMove(b) == 'x' ? 0 : 1));
      for (Action a : s->LegalActions()) {
        auto c = s->Clone();
        c->Apply(a);
        stack.push_back(std::move(c));
      }
    }
    // Well-known counts for tic-tac-toe.
    CHECK(positions == 5478);
    CHECK(terminal == 958);
    CHECK(x_wins == 626);
    CHECK(o_wins == 316);
    CHECK(oracle.Value(std::string(9, '.')) == 0);
  }

  TEST_CASE("observation marks own pieces +1") {
    auto s = NewGame(GameId::kTicTacToe, 2, 0);
    s->Apply(4);
    const auto v0 = Vectorize(*s, 0).values;
    const auto v1 = Vectorize(*s, 1).values;
    CHECK(v0[4] == 1.0f);
    CHECK(v1[4] == -1.0f);
    CHECK(s->ActionToString(4) == "place(1,1)");
  }

  TEST_CASE("OSLA takes an immediate win and never an immediately losing move") {
    // x: 0,1 ; o: 3,4 ; x to move -> 2 wins.
    auto s = NewGame(GameId::kTicTacToe, 2, 0);
    for (Action a : {0, 3, 1, 4}) s->Apply(a);
    Rng rng(1);
    for (int i = 0; i < 50; ++i) CHECK(OslaAct(*s, rng) == 2);
  }
}
