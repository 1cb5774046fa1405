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

/* Stable C boundary for foreign-language hosts.
 *
 * Ownership:
 *   - tt_env_create allocates; tt_env_destroy frees. Every other call
 *     borrows the handle.
 *   - tt_env_observation / tt_env_mask return pointers into buffers owned by
 *     the env. They stay valid, at the same address, until tt_env_destroy;
 *     their contents are rewritten by reset and step.
 *   - Strings returned by tt_last_error and tt_version are owned by the
 *     library. tt_last_error is per thread and valid until the next failing
 *     call on that thread.
 *
 * Lifecycle: after tt_env_close every call except tt_env_destroy fails with
 * TT_ERR_CLOSED. A handle must not be used from two threads at once.
 *
 * Episodes do not auto-reset: after a step reports done, the state (and
 * tt_env_state_hash) is the terminal one until tt_env_reset. */
#ifndef TABLETOP_C_API_H_
#define TABLETOP_C_API_H_

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct tt_env tt_env;

typedef enum tt_status {
  TT_OK = 0,
  TT_ERR_CONFIG = 1,
  TT_ERR_ILLEGAL_ACTION = 2,
  TT_ERR_CLOSED = 3,
  TT_ERR_TERMINAL = 4,
  TT_ERR_ARGUMENT = 5,
  TT_ERR_INTERNAL = 99
} tt_status;

typedef struct tt_episode_info {
  int32_t result; /* 1 win, 0 tie, -1 loss */
  double ret;
  int32_t length; /* learner decisions */
  int32_t seat;
  uint64_t seed;
} tt_episode_info;

const char* tt_version(void);
const char* tt_last_error(void);

/* opponent: "random", "osla" or "ppo:<checkpoint>"; applied to every
 * non-learner seat. The learner sits in seat 0. */
tt_status tt_env_create(const char* game, int32_t players, const char* opponent, uint64_t seed,
                        tt_env** out);
tt_status tt_env_reset(tt_env* env);
tt_status tt_env_step(tt_env* env, int32_t action, double* reward, int32_t* done);
/* Only meaningful right after a step that reported done. */
tt_status tt_env_episode_info(const tt_env* env, tt_episode_info* out);

const float* tt_env_observation(const tt_env* env);
const uint8_t* tt_env_mask(const tt_env* env);
int32_t tt_env_observation_size(const tt_env* env);
/* Writes up to `capacity` dims and returns the rank, or -1 on error. */
int32_t tt_env_observation_shape(const tt_env* env, int32_t* dims, int32_t capacity);
int32_t tt_env_action_count(const tt_env* env);
tt_status tt_env_state_hash(const tt_env* env, uint64_t* out);

tt_status tt_env_close(tt_env* env);
void tt_env_destroy(tt_env* env);

#ifdef __cplusplus
}
#endif

#endif /* TABLETOP_C_API_H_ */
