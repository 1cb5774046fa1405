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

#include "doctest.h"
#include "tabletop/errors.h"
#include "tabletop/observation.h"
#include "test_util.h"

using namespace tabletop;

TEST_SUITE("observation") {
  TEST_CASE("vector observation is recomputable from the JSON view") {
    for (GameId g : AllGames()) {
      const int max_n = g == GameId::kTicTacToe || g == GameId::kStratego ? 2 : 4;
      for (int n = 2; n <= max_n; ++n) {
        long mismatches = 0;
        testing::RandomStates(g, n, 100 + n, g == GameId::kStratego ? 300 : 1500,
                              [&](const GameState& s, Rng& rng) {
                                const int viewer = static_cast<int>(rng.UniformInt(n));
                                const VectorObservation obs = Vectorize(s, viewer);
                                const auto rebuilt =
                                    testing::VectorFromJson(g, n, ToJson(s, viewer));
                                REQUIRE(rebuilt.size() == obs.values.size());
                                for (std::size_t i = 0; i < rebuilt.size(); ++i) {
                                  if (std::abs(rebuilt[i] - obs.values[i]) > 1e-6f) ++mismatches;
                                }
                              });
        CHECK_MESSAGE(mismatches == 0, GameName(g), " with ", n, " players");
      }
    }
  }

  TEST_CASE("vector values are bounded") {
    for (GameId g : AllGames()) {
      testing::RandomStates(g, 2, 5, 500, [&](const GameState& s, Rng&) {
        for (float x : Vectorize(s, s.current_player()).values) {
          REQUIRE(x >= -1.0f);
          REQUIRE(x <= 1.0f);
        }
      });
    }
  }

  TEST_CASE("bad observer and bad buffers are rejected") {
    auto s = NewGame(GameId::kLoveLetter, 2, 0);
    CHECK_THROWS_AS(Vectorize(*s, 2), std::out_of_range);
    CHECK_THROWS_AS(ToJson(*s, -1), std::out_of_range);
    std::vector<float> small(3);
    CHECK_THROWS_AS(VectorizeInto(*s, 0, small), ShapeError);
  }

  TEST_CASE("JSON carries game name and status") {
    auto s = NewGame(GameId::kStratego, 2, 0);
    const auto j = ToJson(*s, 1);
    CHECK(j.at("game") == "Stratego");
    CHECK(j.at("finished") == false);
    CHECK(j.at("observer") == 1);
  }

  TEST_CASE("observation is deterministic") {
    for (GameId g : AllGames()) {
      auto a = NewGame(g, 2, 3);
      auto b = NewGame(g, 2, 3);
      CHECK(Vectorize(*a, 0) == Vectorize(*b, 0));
      CHECK(ToJson(*a, 1) == ToJson(*b, 1));
    }
  }
}
