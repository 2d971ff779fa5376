// Copyright 2026 The aoap-mcts Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace aoap {

// A caller broke an operation's precondition (occupied cell, terminal root, ...).
class PreconditionError : public std::logic_error {
 public:
  explicit PreconditionError(const std::string& what) : std::logic_error(what) {}
};

// Statistics were requested from an edge that has no samples yet.
class InsufficientDataError : public std::runtime_error {
 public:
  explicit InsufficientDataError(const std::string& what)
      : std::runtime_error(what) {}
};

// The game or experiment combination is not supported (e.g. Gomoku PCS).
class UnsupportedError : public std::runtime_error {
 public:
  explicit UnsupportedError(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace aoap
