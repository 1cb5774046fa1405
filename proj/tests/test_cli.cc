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

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int status;
  std::string out;
};

Run Cli(const std::string& args) {
  const std::string cmd = std::string(TABLETOP_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  const int raw = pclose(pipe);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

// The JSON document printed before the trailing "output: <dir>" line.
json Doc(const std::string& out) {
  const auto end = out.find("\noutput: ");
  return json::parse(out.substr(0, end == std::string::npos ? out.size() : end));
}

fs::path OutputDir(const std::string& out) {
  const auto at = out.find("\noutput: ");
  REQUIRE(at != std::string::npos);
  std::string dir = out.substr(at + 9);
  while (!dir.empty() && (dir.back() == '\n' || dir.back() == '\r')) dir.pop_back();
  return dir;
}

struct TempRoot {
  fs::path path = fs::temp_directory_path() / "tabletop_cli_test";
  TempRoot() {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempRoot() { fs::remove_all(path); }
};

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("actions and observe") {
    Run r = Cli("actions --game LoveLetter --players 4");
    REQUIRE(r.status == 0);
    CHECK(Doc(r.out).at("leaf_count") == 68);
    r = Cli("observe --game Stratego --seed 3 --step 10");
    REQUIRE(r.status == 0);
    const json obs = Doc(r.out);
    CHECK(obs.at("shape") == json::array({27, 10, 10}));
    CHECK(obs.at("vector").size() == 2700);
    CHECK(obs.at("decisions") == 10);
  }

  TEST_CASE("play writes artifacts that replay") {
    TempRoot tmp;
    Run r = Cli("play --game Diamant --players 3 --opponent osla --episodes 15 --seeds 2 --out " +
                tmp.path.string());
    REQUIRE(r.status == 0);
    const fs::path dir = OutputDir(r.out);
    CHECK(fs::exists(dir / "manifest.json"));
    CHECK(fs::exists(dir / "episodes_seed0.csv"));
    CHECK(fs::exists(dir / "episodes_seed1.csv"));
    const json summary = Doc(r.out);
    CHECK(summary.at("per_seed").size() == 2);
    std::ifstream m(dir / "manifest.json");
    CHECK(json::parse(m).at("command") == "play");
    CHECK(Cli("replay --log " + (dir / "episodes.jsonl").string()).status == 0);

    // A tampered hash is detected.
    std::ifstream in(dir / "episodes.jsonl");
    std::string line;
    std::getline(in, line);
    json rec = json::parse(line);
    rec["final_hash"] = "0000000000000001";
    const fs::path bad = tmp.path / "bad.jsonl";
    std::ofstream(bad) << rec.dump() << '\n';
    CHECK(Cli("replay --log " + bad.string()).status == 1);
  }

  TEST_CASE("same configuration, same run directory and numbers") {
    TempRoot tmp;
    const std::string args = "eval --game TicTacToe --agent osla --episodes 50 --out " + tmp.path.string();
    const Run a = Cli(args), b = Cli(args);
    REQUIRE(a.status == 0);
    CHECK(OutputDir(a.out) == OutputDir(b.out));
    CHECK(Doc(a.out).at("wins") == Doc(b.out).at("wins"));
  }

  TEST_CASE("train then evaluate the checkpoint") {
    TempRoot tmp;
    Run r = Cli("train --game TicTacToe --steps 2048 --out " + tmp.path.string());
    REQUIRE(r.status == 0);
    const fs::path dir = OutputDir(r.out);
    CHECK(fs::exists(dir / "seed_0" / "metrics.csv"));
    const std::string ckpt = Doc(r.out).at("per_seed")[0].at("checkpoint");
    REQUIRE(fs::exists(ckpt));
    r = Cli("eval --game TicTacToe --agent ppo:" + ckpt + " --episodes 20 --out " + tmp.path.string());
    CHECK(r.status == 0);
    CHECK(Cli("eval --game Diamant --agent ppo:" + ckpt + " --out " + tmp.path.string()).status == 2);
  }

  TEST_CASE("bad input exits non-zero and writes nothing") {
    TempRoot tmp;
    const std::string out = " --out " + tmp.path.string();
    CHECK(Cli("play --game Chess" + out).status == 2);
    CHECK(Cli("play --game TicTacToe --players 3" + out).status == 2);
    CHECK(Cli("eval --game TicTacToe --agent ppo:/nonexistent.ckpt" + out).status != 0);
    CHECK(Cli("train --game Diamant --lr -1" + out).status == 2);
    CHECK(fs::is_empty(tmp.path));
    CHECK(Cli("bench --game Diamant --mode warp --seconds 0.1").status == 2);
    CHECK(Cli("replay --log /nonexistent/file.jsonl").status == 1);
    CHECK(Cli("").status != 0);
  }

  TEST_CASE("bench reports throughput") {
    const Run r = Cli("bench --game LoveLetter --players 2 --seconds 0.2");
    REQUIRE(r.status == 0);
    CHECK(Doc(r.out).at("steps_per_sec").get<double>() > 0);
  }
}
