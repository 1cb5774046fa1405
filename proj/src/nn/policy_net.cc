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

#include "tabletop/nn/policy_net.h"

namespace tabletop::nn {

NetShape DefaultNetShape(const std::vector<int>& observation_shape, int actions, int hidden,
                         int conv_channels) {
  if (observation_shape.empty() || actions <= 0 || hidden <= 0) {
    throw ShapeError("network needs a non-empty observation shape and at least one action");
  }
  NetShape shape;
  shape.observation_shape = observation_shape;
  shape.actions = actions;
  shape.hidden = hidden;
  shape.conv_channels = observation_shape.size() == 3 ? conv_channels : 0;
  return shape;
}

std::vector<TensorInfo> ParameterLayout(const NetShape& shape) {
  std::vector<TensorInfo> layout;
  Eigen::Index offset = 0;
  auto add = [&](std::string name, int rows, int cols) {
    layout.push_back({std::move(name), rows, cols, offset});
    offset += static_cast<Eigen::Index>(rows) * cols;
  };
  if (shape.has_conv()) {
    if (shape.observation_shape.size() != 3) {
      throw ShapeError("convolution needs a (channels, height, width) observation");
    }
    add("conv_w", shape.conv_channels, shape.in_channels() * 9);
    add("conv_b", shape.conv_channels, 1);
  }
  add("w1", shape.hidden, shape.trunk_input());
  add("b1", shape.hidden, 1);
  add("w2", shape.hidden, shape.hidden);
  add("b2", shape.hidden, 1);
  add("policy_w", shape.actions, shape.hidden);
  add("policy_b", shape.actions, 1);
  add("value_w", 1, shape.hidden);
  add("value_b", 1, 1);
  return layout;
}

}  // namespace tabletop::nn
