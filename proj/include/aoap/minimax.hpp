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

#include <algorithm>
#include <array>
#include <cstdint>
#include <vector>

#include "aoap/errors.hpp"
#include "aoap/game.hpp"

namespace aoap {

struct OracleResult {
  double value = 0.0;  // for the side to move: win 1, draw 0.5, loss 0
  std::vector<Action> optimal_actions;
};

namespace detail {

// Exhaustive tic-tac-toe solver. Every position reachable from the empty
// board (5,478 of them) is solved once on construction, so lookups are
// read-only and safe to share across threads.
class TicTacToeTable {
 public:
  static constexpr int kCodes = 19683;  // 3^9

  TicTacToeTable() {
    values_.fill(kUnknown);
    solve(GameState::tictactoe());
  }

  static const TicTacToeTable& instance() {
    static const TicTacToeTable table;
    return table;
  }

  static int code(const GameState& s) {
    int c = 0;
    for (int i = 8; i >= 0; --i) {
      c = c * 3 + static_cast<int>(s.at(i / 3, i % 3));
    }
    return c;
  }

  // Value in half-points (0, 1, 2) from the side to move.
  int half_points(const GameState& s) const {
    const std::int8_t v = values_[code(s)];
    if (v == kUnknown) {
      throw PreconditionError("position not reachable from the empty board");
    }
    return v;
  }

  int solved_positions() const {
    int n = 0;
    for (auto v : values_) n += v != kUnknown;
    return n;
  }

 private:
  static constexpr std::int8_t kUnknown = -1;

  int solve(const GameState& s) {
    std::int8_t& slot = values_[code(s)];
    if (slot != kUnknown) return slot;
    int best;
    if (s.is_terminal()) {
      best = static_cast<int>(2.0 * reward(s.outcome(), s.to_move()));
    } else {
      best = 0;
      for (const Action& a : s.legal_actions()) {
        best = std::max(best, 2 - solve(s.apply(a)));
      }
    }
    slot = static_cast<std::int8_t>(best);
    return best;
  }

  std::array<std::int8_t, kCodes> values_{};
};

}  // namespace detail

// Game-theoretic value of a tic-tac-toe position and every move achieving it.
inline OracleResult minimax_oracle(const GameState& state) {
  if (state.kind() != GameKind::kTicTacToe || state.board_size() != 3) {
    throw UnsupportedError("minimax oracle supports 3x3 tic-tac-toe only");
  }
  if (state.is_terminal()) {
    throw PreconditionError("minimax oracle needs an ongoing position");
  }
  const auto& table = detail::TicTacToeTable::instance();
  const int value = table.half_points(state);
  OracleResult out;
  out.value = value / 2.0;
  for (const Action& a : state.legal_actions()) {
    if (2 - table.half_points(state.apply(a)) == value) {
      out.optimal_actions.push_back(a);
    }
  }
  return out;
}

// Value of any reachable position (terminal included) for the side to move.
inline double minimax_value(const GameState& state) {
  if (state.kind() != GameKind::kTicTacToe) {
    throw UnsupportedError("minimax oracle supports 3x3 tic-tac-toe only");
  }
  return detail::TicTacToeTable::instance().half_points(state) / 2.0;
}

}  // namespace aoap
