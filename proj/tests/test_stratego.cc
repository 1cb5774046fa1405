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
#include "tabletop/errors.h"
#include "tabletop/games/stratego.h"
#include "tabletop/observation.h"

using namespace tabletop;
using namespace tabletop::stratego;

namespace {

constexpr int kNorth = 0, kEast = 1, kSouth = 2, kWest = 3;

int Cell(int r, int c) { return r * kSize + c; }

// Empty board, player 0 to move.
std::unique_ptr<StrategoState> Empty() {
  auto s = std::make_unique<StrategoState>(1);
  for (int cell = 0; cell < kCells; ++cell) s->SetPieceForTesting(cell, Piece{});
  return s;
}

// Gives both sides a spare movable piece far from the action so that a
// capture elsewhere doesn't end the game by leaving a side without moves.
void AddReserves(StrategoState& s) {
  s.SetPieceForTesting(Cell(0, 0), Piece{0, kSergeant});
  s.SetPieceForTesting(Cell(9, 9), Piece{1, kSergeant});
}

}  // namespace

TEST_SUITE("stratego") {
  TEST_CASE("deployments are full classic armies") {
    const std::map<char, int> expected = {{'F', 1}, {'S', 1}, {'2', 8}, {'3', 5}, {'4', 4},
                                          {'5', 4}, {'6', 4}, {'7', 3}, {'8', 2}, {'9', 1},
                                          {'M', 1}, {'B', 6}};
    for (const auto& rows : kDeployments) {
      std::map<char, int> counts;
      for (auto row : rows) {
        REQUIRE(row.size() == 10);
        for (char ch : row) ++counts[ch];
      }
      CHECK(counts == expected);
    }
    for (Seed seed = 0; seed < 8; ++seed) {
      StrategoState s(seed);
      std::array<int, 2> pieces{};
      for (int cell = 0; cell < kCells; ++cell) {
        const Piece& p = s.board()[cell];
        if (p.owner < 0) continue;
        ++pieces[p.owner];
        CHECK_FALSE(p.revealed);
        CHECK((p.owner == 0 ? cell / kSize < 4 : cell / kSize >= 6));
      }
      CHECK(pieces == std::array<int, 2>{40, 40});
    }
  }

  TEST_CASE("lakes") {
    int lakes = 0;
    for (int cell = 0; cell < kCells; ++cell) lakes += IsLake(cell);
    CHECK(lakes == 8);
    CHECK(IsLake(Cell(4, 2)));
    CHECK(IsLake(Cell(5, 7)));
    CHECK_FALSE(IsLake(Cell(4, 4)));
  }

  TEST_CASE("move encoding round trips over the regular tree") {
    CHECK(BuildActionTree().leaf_count() == kNumActions);
    CHECK(kNumActions == 3600);
    for (Action a = 0; a < kNumActions; ++a) {
      const Move m = DecodeMove(a);
      REQUIRE(EncodeMove(m.cell, m.direction, m.distance) == a);
      REQUIRE(m.distance >= 1);
      REQUIRE(m.distance <= kMaxDistance);
    }
  }

  TEST_CASE("opening moves only step forward into the gaps between lakes") {
    StrategoState s(3);
    for (Action a : s.LegalActions()) {
      const Move m = DecodeMove(a);
      CHECK(m.cell / kSize == 3);
      CHECK(m.direction == kSouth);
      const int col = m.cell % kSize;
      CHECK((col == 0 || col == 1 || col == 4 || col == 5 || col == 8 || col == 9));
      if (m.distance > 1) CHECK(s.board()[m.cell].rank == kScout);
    }
  }

  TEST_CASE("scouts slide over empty cells and stop at pieces and lakes") {
    auto s = Empty();
    AddReserves(*s);
    s->SetPieceForTesting(Cell(3, 4), Piece{0, kScout});
    s->SetPieceForTesting(Cell(7, 4), Piece{1, kMiner});
    s->SetPieceForTesting(Cell(3, 1), Piece{0, kSergeant});
    int south = 0, east = 0;
    for (Action a : s->LegalActions()) {
      const Move m = DecodeMove(a);
      if (m.cell != Cell(3, 4)) continue;
      south += m.direction == kSouth;
      east += m.direction == kEast;
    }
    CHECK(south == 4);  // rows 4..6 empty, row 7 capture
    CHECK(east == 5);
    CHECK_FALSE(s->IsLegal(EncodeMove(Cell(3, 4), kSouth, 5)));
    CHECK_FALSE(s->IsLegal(EncodeMove(Cell(3, 1), kSouth, 2)));  // non-scout
    CHECK_FALSE(s->IsLegal(EncodeMove(Cell(3, 4), kWest, 4)));   // own piece in the way
    auto lake = Empty();
    AddReserves(*lake);
    lake->SetPieceForTesting(Cell(3, 2), Piece{0, kScout});
    CHECK_FALSE(lake->IsLegal(EncodeMove(Cell(3, 2), kSouth, 1)));
    CHECK_THROWS_AS(lake->Apply(EncodeMove(Cell(3, 2), kSouth, 1)), IllegalActionError);
  }

  TEST_CASE("bombs and flags never move") {
    auto s = Empty();
    AddReserves(*s);
    s->SetPieceForTesting(Cell(2, 5), Piece{0, kBomb});
    s->SetPieceForTesting(Cell(2, 7), Piece{0, kFlag});
    for (Action a : s->LegalActions()) CHECK(DecodeMove(a).cell == Cell(0, 0));
  }

  struct Fight {
    int attacker, defender;
    int survivor_owner;  // -1 when both die
  };

  TEST_CASE("combat") {
    const Fight fights[] = {
        {kSpy, kMarshal, 0},      {kMarshal, kSpy, 0},      {kMiner, kBomb, 0},
        {kGeneral, kBomb, 1},     {kScout, kSpy, 0},        {kSergeant, kSergeant, -1},
        {kCaptain, kMajor, 1},    {kMarshal, kGeneral, 0},  {kSpy, kGeneral, 1},
    };
    for (const Fight& f : fights) {
      CAPTURE(f.attacker);
      CAPTURE(f.defender);
      auto s = Empty();
      AddReserves(*s);
      s->SetPieceForTesting(Cell(5, 5), Piece{0, f.attacker});
      s->SetPieceForTesting(Cell(6, 5), Piece{1, f.defender});
      s->Apply(EncodeMove(Cell(5, 5), kSouth, 1));
      const Piece& at = s->board()[Cell(6, 5)];
      CHECK(s->board()[Cell(5, 5)].owner == -1);
      CHECK(at.owner == f.survivor_owner);
      if (f.survivor_owner >= 0) {
        CHECK(at.revealed);
        CHECK(at.rank == (f.survivor_owner == 0 ? f.attacker : f.defender));
      }
    }
  }

  TEST_CASE("capturing the flag wins") {
    auto s = Empty();
    AddReserves(*s);
    s->SetPieceForTesting(Cell(5, 5), Piece{0, kScout});
    s->SetPieceForTesting(Cell(6, 5), Piece{1, kFlag});
    s->Apply(EncodeMove(Cell(5, 5), kSouth, 1));
    REQUIRE(s->is_terminal());
    CHECK(s->Reward(0) == 1.0);
    CHECK(s->Reward(1) == -1.0);
  }

  TEST_CASE("leaving the opponent without a move wins") {
    auto s = Empty();
    s->SetPieceForTesting(Cell(0, 0), Piece{0, kMarshal});
    s->SetPieceForTesting(Cell(9, 9), Piece{1, kFlag});
    s->SetPieceForTesting(Cell(1, 0), Piece{1, kSpy});
    s->Apply(EncodeMove(Cell(0, 0), kSouth, 1));  // marshal captures the last mover
    REQUIRE(s->is_terminal());
    CHECK(s->Reward(0) == 1.0);
  }

  TEST_CASE("800 decisions end in a draw") {
    auto s = Empty();
    s->SetPieceForTesting(Cell(0, 0), Piece{0, kSergeant});
    s->SetPieceForTesting(Cell(9, 9), Piece{1, kSergeant});
    s->SetPieceForTesting(Cell(9, 0), Piece{1, kFlag});
    s->SetPieceForTesting(Cell(0, 9), Piece{0, kFlag});
    int decisions = 0;
    while (!s->is_terminal()) {
      const int p = s->current_player();
      const int from = p == 0 ? (decisions % 4 == 0 ? Cell(0, 0) : Cell(0, 1))
                              : (decisions % 4 == 1 ? Cell(9, 9) : Cell(9, 8));
      s->Apply(EncodeMove(from, p == 0 ? (from == Cell(0, 0) ? kEast : kWest)
                                       : (from == Cell(9, 9) ? kWest : kEast),
                          1));
      ++decisions;
    }
    CHECK(decisions == kDrawDecisions);
    CHECK(s->Reward(0) == 0.0);
    CHECK(s->Reward(1) == 0.0);
  }

  TEST_CASE("opponent ranks stay hidden until combat") {
    StrategoState a(5), b(5);
    // Swap two of player 1's hidden pieces: player 0's view must not change.
    const Piece x = b.board()[Cell(9, 0)];
    const Piece y = b.board()[Cell(9, 1)];
    b.SetPieceForTesting(Cell(9, 0), y);
    b.SetPieceForTesting(Cell(9, 1), x);
    CHECK(Vectorize(a, 0) == Vectorize(b, 0));
    CHECK(ToJson(a, 0) == ToJson(b, 0));
    if (!(x == y)) CHECK_FALSE(Vectorize(a, 1) == Vectorize(b, 1));
  }
}
