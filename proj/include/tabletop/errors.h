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

#ifndef TABLETOP_ERRORS_H_
#define TABLETOP_ERRORS_H_

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tabletop {

// Unsupported game, player count, or mismatched configuration.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An action outside the legal set was submitted.
class IllegalActionError : public std::runtime_error {
 public:
  IllegalActionError(std::string_view game, int action, int decision);

  int action() const { return action_; }

 private:
  int action_;
};

// A query that needs a running game was made on a finished one.
class TerminalStateError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A mask with no legal entry.
class InvalidMaskError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace tabletop

#endif  // TABLETOP_ERRORS_H_
