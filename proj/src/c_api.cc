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

#include "tabletop/c_api.h"

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tabletop/env.h"
#include "tabletop/errors.h"

struct tt_env {
  std::unique_ptr<tabletop::Env> env;
  std::vector<float> observation;
  std::vector<std::uint8_t> mask;
  std::optional<tabletop::EpisodeInfo> last_episode;
  bool closed = false;
};

namespace {

thread_local std::string last_error;

tt_status Fail(tt_status code, const std::string& message) {
  last_error = message;
  return code;
}

template <typename F>
tt_status Guard(F&& body) {
  try {
    return body();
  } catch (const tabletop::IllegalActionError& e) {
    return Fail(TT_ERR_ILLEGAL_ACTION, e.what());
  } catch (const tabletop::TerminalStateError& e) {
    return Fail(TT_ERR_TERMINAL, e.what());
  } catch (const tabletop::ConfigError& e) {
    return Fail(TT_ERR_CONFIG, e.what());
  } catch (const std::exception& e) {
    return Fail(TT_ERR_INTERNAL, e.what());
  } catch (...) {
    return Fail(TT_ERR_INTERNAL, "unknown error");
  }
}

tt_status CheckOpen(const tt_env* env) {
  if (env == nullptr) return Fail(TT_ERR_ARGUMENT, "null env handle");
  if (env->closed) return Fail(TT_ERR_CLOSED, "env is closed");
  return TT_OK;
}

}  // namespace

extern "C" {

const char* tt_version(void) { return TABLETOP_VERSION; }

const char* tt_last_error(void) { return last_error.c_str(); }

tt_status tt_env_create(const char* game, int32_t players, const char* opponent, uint64_t seed,
                        tt_env** out) {
  if (out == nullptr || game == nullptr) return Fail(TT_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  return Guard([&] {
    tabletop::EnvConfig config;
    config.game = tabletop::ParseGameId(game);
    config.num_players = players;
    config.opponents.assign(
        players > 1 ? players - 1 : 1,
        tabletop::AgentSpec::Parse(opponent != nullptr ? opponent : "random"));
    config.seed = seed;
    config.auto_reset = false;
    auto handle = std::make_unique<tt_env>();
    handle->env = std::make_unique<tabletop::Env>(std::move(config));
    handle->observation.assign(handle->env->spec().observation_size, 0.0f);
    handle->mask.assign(handle->env->tree().leaf_count(), 0);
    *out = handle.release();
    return TT_OK;
  });
}

tt_status tt_env_reset(tt_env* env) {
  if (tt_status s = CheckOpen(env); s != TT_OK) return s;
  return Guard([&] {
    env->env->ResetInto(env->observation, env->mask);
    env->last_episode.reset();
    return TT_OK;
  });
}

tt_status tt_env_step(tt_env* env, int32_t action, double* reward, int32_t* done) {
  if (tt_status s = CheckOpen(env); s != TT_OK) return s;
  return Guard([&] {
    const auto outcome = env->env->StepInto(action, env->observation, env->mask);
    env->last_episode = outcome.info;
    if (reward != nullptr) *reward = outcome.reward;
    if (done != nullptr) *done = outcome.done ? 1 : 0;
    return TT_OK;
  });
}

tt_status tt_env_episode_info(const tt_env* env, tt_episode_info* out) {
  if (tt_status s = CheckOpen(env); s != TT_OK) return s;
  if (out == nullptr) return Fail(TT_ERR_ARGUMENT, "null output");
  if (!env->last_episode) return Fail(TT_ERR_ARGUMENT, "no episode has just finished");
  const auto& e = *env->last_episode;
  out->result = e.result == tabletop::Outcome::kWin ? 1 : e.result == tabletop::Outcome::kLoss ? -1 : 0;
  out->ret = e.ret;
  out->length = e.length;
  out->seat = e.seat;
  out->seed = e.seed;
  return TT_OK;
}

const float* tt_env_observation(const tt_env* env) {
  return CheckOpen(env) == TT_OK ? env->observation.data() : nullptr;
}

const uint8_t* tt_env_mask(const tt_env* env) {
  return CheckOpen(env) == TT_OK ? env->mask.data() : nullptr;
}

int32_t tt_env_observation_size(const tt_env* env) {
  return CheckOpen(env) == TT_OK ? static_cast<int32_t>(env->observation.size()) : -1;
}

int32_t tt_env_observation_shape(const tt_env* env, int32_t* dims, int32_t capacity) {
  if (CheckOpen(env) != TT_OK) return -1;
  if (dims == nullptr && capacity > 0) {
    Fail(TT_ERR_ARGUMENT, "null dims buffer");
    return -1;
  }
  const auto& shape = env->env->spec().observation_shape;
  for (int32_t i = 0; i < capacity && i < static_cast<int32_t>(shape.size()); ++i) {
    dims[i] = shape[i];
  }
  return static_cast<int32_t>(shape.size());
}

int32_t tt_env_action_count(const tt_env* env) {
  return CheckOpen(env) == TT_OK ? static_cast<int32_t>(env->mask.size()) : -1;
}

tt_status tt_env_state_hash(const tt_env* env, uint64_t* out) {
  if (tt_status s = CheckOpen(env); s != TT_OK) return s;
  if (out == nullptr) return Fail(TT_ERR_ARGUMENT, "null output");
  return Guard([&] {
    *out = env->env->state().Hash();
    return TT_OK;
  });
}

tt_status tt_env_close(tt_env* env) {
  if (tt_status s = CheckOpen(env); s != TT_OK) return s;
  env->closed = true;
  env->env.reset();
  return TT_OK;
}

void tt_env_destroy(tt_env* env) { delete env; }

}  // extern "C"
