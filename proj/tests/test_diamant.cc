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

#include <numeric>

#include "doctest.h"
#include "tabletop/games/diamant.h"
#include "tabletop/observation.h"

using namespace tabletop;
using namespace tabletop::diamant;

namespace {

std::unique_ptr<DiamantState> Fresh(int n, Seed seed) {
  return std::make_unique<DiamantState>(n, seed);
}

int PathGems(const DiamantState& s) {
  return std::accumulate(s.path_gems().begin(), s.path_gems().end(), 0);
}

// A hazard type that does not appear on the current path.
int UnseenHazard(const DiamantState& s) {
  for (int h = 0; h < kHazardTypes; ++h) {
    bool seen = false;
    for (const Tile& t : s.path()) seen |= !t.is_treasure() && t.kind == h;
    if (!seen) return h;
  }
  return -1;
}

Tile Treasure(int v) { return Tile{Tile::kTreasure, v}; }
Tile Hazard(int h) { return Tile{h, 0}; }

}  // namespace

TEST_SUITE("diamant") {
  TEST_CASE("setup reveals one tile from the full 30-tile deck") {
    auto s = Fresh(3, 1);
    CHECK(s->path().size() == 1);
    CHECK(s->deck().size() == 29);
    int treasures = 0, gems = 0;
    std::array<int, kHazardTypes> hazards{};
    auto count = [&](const Tile& t) {
      if (t.is_treasure()) {
        ++treasures;
        gems += t.value;
      } else {
        ++hazards[t.kind];
      }
    };
    for (const Tile& t : s->deck()) count(t);
    for (const Tile& t : s->path()) count(t);
    CHECK(treasures == 15);
    CHECK(gems == std::accumulate(kTreasureValues.begin(), kTreasureValues.end(), 0));
    for (int h : hazards) CHECK(h == kHazardCopies);
    for (int p = 0; p < 3; ++p) CHECK(s->in_cave(p));
  }

  TEST_CASE("treasure splits evenly with the remainder left on the tile") {
    auto s = Fresh(2, 2);
    s->SetDeckForTesting({Treasure(1), Treasure(7)});
    const int c0 = s->carried(0), c1 = s->carried(1);
    s->Apply(kContinue);
    CHECK(s->path().size() == 1);  // nothing happens until everyone decided
    s->Apply(kContinue);
    CHECK(s->path().size() == 2);
    CHECK(s->carried(0) == c0 + 3);
    CHECK(s->carried(1) == c1 + 3);
    CHECK(s->path_gems().back() == 1);
  }

  TEST_CASE("a lone leaver takes every gem left on the path and banks") {
    auto s = Fresh(2, 3);
    s->SetDeckForTesting({Treasure(1), Treasure(5), Treasure(9)});
    s->Apply(kContinue);
    s->Apply(kContinue);  // reveals 9: 4 each, 1 left
    const int path_gems = PathGems(*s);
    const int carried = s->carried(0);
    s->Apply(kReturn);
    s->Apply(kContinue);  // reveals 5 for player 1 alone
    CHECK_FALSE(s->in_cave(0));
    CHECK(s->banked(0) == carried + path_gems);
    CHECK(s->carried(0) == 0);
    CHECK(s->path_gems()[s->path_gems().size() - 2] == 0);
    CHECK(s->path_gems().back() == 0);  // the 5 went to player 1 alone
    CHECK(s->LegalActions() == std::vector<Action>{kWait});
    s->Apply(kWait);
    CHECK(s->current_player() == 1);
    CHECK(s->LegalActions() == std::vector<Action>{kContinue, kReturn});
  }

  TEST_CASE("two leavers split path gems and leave the remainder") {
    auto s = Fresh(3, 4);
    s->SetDeckForTesting({Treasure(1), Treasure(11)});
    for (int p = 0; p < 3; ++p) s->Apply(kContinue);  // 11: 3 each, 2 left
    const int path_gems = PathGems(*s);
    const int b0 = s->banked(0) + s->carried(0);
    s->Apply(kReturn);
    s->Apply(kReturn);
    s->Apply(kContinue);
    CHECK(s->banked(0) == b0 + path_gems / 2);
    CHECK(PathGems(*s) == path_gems % 2);
  }

  TEST_CASE("second hazard of a type traps explorers and removes one copy") {
    auto s = Fresh(2, 5);
    const int h = UnseenHazard(*s);
    REQUIRE(h >= 0);
    s->SetDeckForTesting({Treasure(1), Hazard(h), Hazard(h)});
    s->Apply(kContinue);
    s->Apply(kContinue);
    REQUIRE(s->round() == 0);
    const int banked0 = s->banked(0);
    s->Apply(kContinue);
    s->Apply(kContinue);
    CHECK(s->round() == 1);
    CHECK(s->hazards_removed()[h] == 1);
    CHECK(s->banked(0) == banked0);
    // New expedition: everyone back in, the deck lost one copy of h.
    CHECK(s->in_cave(0));
    CHECK(s->in_cave(1));
    int copies = 0;
    for (const Tile& t : s->deck()) copies += !t.is_treasure() && t.kind == h;
    for (const Tile& t : s->path()) copies += !t.is_treasure() && t.kind == h;
    CHECK(copies == kHazardCopies - 1);
  }

  TEST_CASE("an exhausted deck ends the expedition with everyone banking") {
    auto s = Fresh(2, 6);
    s->SetDeckForTesting({});
    const int total0 = s->banked(0) + s->carried(0);
    const int total1 = s->banked(1) + s->carried(1);
    s->Apply(kContinue);
    s->Apply(kContinue);
    CHECK(s->round() == 1);
    CHECK(s->banked(0) == total0);
    CHECK(s->banked(1) == total1);
  }

  TEST_CASE("everyone returning ends the expedition") {
    auto s = Fresh(2, 7);
    s->Apply(kReturn);
    s->Apply(kReturn);
    CHECK(s->round() == 1);
  }

  TEST_CASE("five expeditions, highest bank wins") {
    auto s = Fresh(3, 8);
    for (int r = 0; r < kRounds; ++r) {
      for (int p = 0; p < 3; ++p) s->Apply(kReturn);
    }
    REQUIRE(s->is_terminal());
    // Everyone returned at once every time, so banks reflect equal splits.
    std::vector<int> banks = {s->banked(0), s->banked(1), s->banked(2)};
    const int best = *std::max_element(banks.begin(), banks.end());
    for (int p = 0; p < 3; ++p) {
      const int ties = std::count(banks.begin(), banks.end(), best);
      const Outcome expected = banks[p] < best ? Outcome::kLoss
                               : ties == 1     ? Outcome::kWin
                                               : Outcome::kTie;
      CHECK(s->status().results[p] == expected);
    }
  }

  TEST_CASE("the unique top bank wins") {
    auto s = Fresh(2, 9);
    for (int r = 0; r < kRounds - 1; ++r) {
      s->Apply(kReturn);
      s->Apply(kReturn);
    }
    s->SetBankedForTesting(1, 100);
    s->Apply(kReturn);
    s->Apply(kReturn);
    REQUIRE(s->is_terminal());
    CHECK(s->status().results == std::vector<Outcome>{Outcome::kLoss, Outcome::kWin});
  }

  TEST_CASE("choices stay hidden until the round resolves") {
    auto a = Fresh(2, 10);
    auto b = Fresh(2, 10);
    a->Apply(kContinue);
    b->Apply(kReturn);
    CHECK(Vectorize(*a, 1) == Vectorize(*b, 1));
    CHECK(ToJson(*a, 1) == ToJson(*b, 1));
    CHECK(a->Hash() != b->Hash());
  }

  TEST_CASE("opponent banks are hidden") {
    auto a = Fresh(2, 11);
    auto b = Fresh(2, 11);
    b->SetBankedForTesting(1, 40);
    CHECK(Vectorize(*a, 0) == Vectorize(*b, 0));
    CHECK(Vectorize(*a, 1) != Vectorize(*b, 1));
    CHECK_FALSE(ToJson(*a, 0)["players"][1].contains("banked"));
  }

  TEST_CASE("heuristic grows with gems and stays inside (-1, 1)") {
    auto s = Fresh(2, 12);
    const double before = s->Heuristic(0);
    s->SetBankedForTesting(0, 30);
    CHECK(s->Heuristic(0) > before);
    s->SetBankedForTesting(0, 100000);
    CHECK(s->Heuristic(0) < 1.0);
  }
}
