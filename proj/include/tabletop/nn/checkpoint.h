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

#ifndef TABLETOP_NN_CHECKPOINT_H_
#define TABLETOP_NN_CHECKPOINT_H_

#include <string>

#include "json.hpp"
#include "tabletop/nn/policy_net.h"

namespace tabletop::nn {

// File layout:
//   line 1: "TABLETOP-CKPT 1"
//   line 2: compact JSON header (network shape, parameter count, metadata)
//   rest:   parameter_count little-endian float32 values in layout order
inline constexpr int kCheckpointVersion = 1;

struct Checkpoint {
  nlohmann::json meta;
  PolicyNet<float> net;
};

void SaveCheckpoint(const std::string& path, const PolicyNet<float>& net,
                    const nlohmann::json& meta);
// Throws std::runtime_error on a missing, truncated or foreign file.
Checkpoint LoadCheckpoint(const std::string& path);

nlohmann::json NetShapeToJson(const NetShape& shape);
NetShape NetShapeFromJson(const nlohmann::json& j);

}  // namespace tabletop::nn

#endif  // TABLETOP_NN_CHECKPOINT_H_
