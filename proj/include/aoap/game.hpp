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
#include <compare>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "aoap/errors.hpp"

namespace aoap {

enum class PlayerId : std::uint8_t { kP1 = 0, kP2 = 1 };

constexpr PlayerId opponent(PlayerId p) {
  return p == PlayerId::kP1 ? PlayerId::kP2 : PlayerId::kP1;
}

inline const char* to_string(PlayerId p) {
  return p == PlayerId::kP1 ? "P1" : "P2";
}

// Board coordinate, 0-indexed. Ordering is row-major.
struct Action {
  int row = 0;
  int col = 0;

  friend auto operator<=>(const Action&, const Action&) = default;
};

inline std::string to_string(const Action& a) {
  return "(" + std::to_string(a.row) + "," + std::to_string(a.col) + ")";
}

enum class Cell : std::uint8_t { kEmpty = 0, kP1 = 1, kP2 = 2 };

constexpr Cell mark_of(PlayerId p) {
  return p == PlayerId::kP1 ? Cell::kP1 : Cell::kP2;
}

enum class Status : std::uint8_t { kOngoing, kWin, kDraw };

struct Outcome {
  Status status = Status::kOngoing;
  PlayerId winner = PlayerId::kP1;  // meaningful only when status == kWin

  static constexpr Outcome ongoing() { return {}; }
  static constexpr Outcome draw() { return {Status::kDraw, PlayerId::kP1}; }
  static constexpr Outcome win(PlayerId p) { return {Status::kWin, p}; }

  constexpr bool is_terminal() const { return status != Status::kOngoing; }

  friend constexpr bool operator==(const Outcome& a, const Outcome& b) {
    if (a.status != b.status) return false;
    return a.status != Status::kWin || a.winner == b.winner;
  }
};

// Terminal reward in {0, 0.5, 1} for `perspective`.
inline double reward(const Outcome& outcome, PlayerId perspective) {
  switch (outcome.status) {
    case Status::kWin:
      return outcome.winner == perspective ? 1.0 : 0.0;
    case Status::kDraw:
      return 0.5;
    case Status::kOngoing:
      break;
  }
  throw PreconditionError("reward() called on an ongoing game");
}

enum class GameKind : std::uint8_t { kTicTacToe, kGomoku };

inline const char* to_string(GameKind k) {
  return k == GameKind::kTicTacToe ? "tictactoe" : "gomoku";
}

// Immutable k-in-a-row board position with the player to move.
//
// Player 1 always moves first, so the side to move is implied by the mark
// counts. The outcome is cached: computed by a full scan when a position is
// built from text, and incrementally from the last placed stone otherwise.
class GameState {
 public:
  static constexpr int kMaxSize = 15;

  GameState(GameKind kind, int board_size, int win_length)
      : kind_(kind), size_(board_size), win_length_(win_length) {
    if (board_size < 1 || board_size > kMaxSize) {
      throw PreconditionError("board size must be in [1, " +
                              std::to_string(kMaxSize) + "]");
    }
    if (win_length < 1 || win_length > board_size) {
      throw PreconditionError("win length must be in [1, board size]");
    }
    cells_.fill(Cell::kEmpty);
  }

  static GameState tictactoe() { return GameState(GameKind::kTicTacToe, 3, 3); }
  static GameState gomoku(int board_size = 8, int win_length = 5) {
    return GameState(GameKind::kGomoku, board_size, win_length);
  }

  GameKind kind() const { return kind_; }
  int board_size() const { return size_; }
  int win_length() const { return win_length_; }
  int num_cells() const { return size_ * size_; }
  int depth() const { return depth_; }
  PlayerId to_move() const { return to_move_; }
  const Outcome& outcome() const { return outcome_; }
  bool is_terminal() const { return outcome_.is_terminal(); }

  bool in_bounds(const Action& a) const {
    return a.row >= 0 && a.row < size_ && a.col >= 0 && a.col < size_;
  }

  Cell at(int row, int col) const { return cells_[row * size_ + col]; }
  Cell at(const Action& a) const { return at(a.row, a.col); }

  int num_empty() const { return is_terminal() ? 0 : num_cells() - depth_; }

  // k-th empty cell in row-major order, 0 <= k < num_empty().
  Action nth_empty(int k) const {
    for (int i = 0; i < num_cells(); ++i) {
      if (cells_[i] == Cell::kEmpty && k-- == 0) return {i / size_, i % size_};
    }
    throw PreconditionError("nth_empty index out of range");
  }

  // All empty cells in row-major order; empty once the game is decided.
  std::vector<Action> legal_actions() const {
    std::vector<Action> out;
    if (is_terminal()) return out;
    out.reserve(num_cells() - depth_);
    for (int i = 0; i < num_cells(); ++i) {
      if (cells_[i] == Cell::kEmpty) out.push_back({i / size_, i % size_});
    }
    return out;
  }

  GameState apply(const Action& a) const {
    GameState next = *this;
    next.apply_in_place(a);
    return next;
  }

  // Mutating form of apply(), for scratch copies such as roll-outs.
  void apply_in_place(const Action& a) {
    if (is_terminal()) throw PreconditionError("move on a finished game");
    if (!in_bounds(a)) {
      throw PreconditionError("action " + to_string(a) + " out of range");
    }
    Cell& c = cells_[a.row * size_ + a.col];
    if (c != Cell::kEmpty) {
      throw PreconditionError("cell " + to_string(a) + " is occupied");
    }
    c = mark_of(to_move_);
    ++depth_;
    if (completes_line(a)) {
      outcome_ = Outcome::win(to_move_);
    } else if (depth_ == num_cells()) {
      outcome_ = Outcome::draw();
    }
    to_move_ = opponent(to_move_);
  }

  // Header line `game=<kind> size=<n> to_move=<X|O>` followed by one row per
  // line using '.', 'X' (P1) and 'O' (P2).
  std::string to_text() const {
    std::string s = "game=";
    s += to_string(kind_);
    s += " size=" + std::to_string(size_);
    s += " to_move=";
    s += to_move_ == PlayerId::kP1 ? 'X' : 'O';
    s += '\n';
    for (int r = 0; r < size_; ++r) {
      for (int c = 0; c < size_; ++c) s += glyph(at(r, c));
      s += '\n';
    }
    return s;
  }

  static GameState from_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw PreconditionError("empty board text");
    std::string game, size_field, move_field;
    std::istringstream header(line);
    header >> game >> size_field >> move_field;
    auto value_of = [&](const std::string& field, const std::string& key) {
      if (field.rfind(key + "=", 0) != 0) {
        throw PreconditionError("bad board header: " + line);
      }
      return field.substr(key.size() + 1);
    };
    const std::string kind_name = value_of(game, "game");
    const int size = std::stoi(value_of(size_field, "size"));
    const std::string mover = value_of(move_field, "to_move");
    if (kind_name != "tictactoe" && kind_name != "gomoku") {
      throw PreconditionError("unknown game " + kind_name);
    }
    if (kind_name == "tictactoe" && size != 3) {
      throw PreconditionError("tictactoe board must be 3x3");
    }
    GameState state = kind_name == "tictactoe"
                          ? tictactoe()
                          : gomoku(size, std::min(5, size));
    int p1 = 0;
    int p2 = 0;
    for (int r = 0; r < size; ++r) {
      if (!std::getline(in, line) || static_cast<int>(line.size()) < size) {
        throw PreconditionError("board text has too few rows/columns");
      }
      for (int c = 0; c < size; ++c) {
        Cell cell = Cell::kEmpty;
        switch (line[c]) {
          case '.': break;
          case 'X': cell = Cell::kP1; ++p1; break;
          case 'O': cell = Cell::kP2; ++p2; break;
          default: throw PreconditionError(std::string("bad board glyph '") + line[c] + "'");
        }
        state.cells_[r * size + c] = cell;
      }
    }
    if (p1 - p2 != 0 && p1 - p2 != 1) {
      throw PreconditionError("mark counts inconsistent with P1 moving first");
    }
    state.depth_ = p1 + p2;
    state.to_move_ = p1 == p2 ? PlayerId::kP1 : PlayerId::kP2;
    if ((mover == "X") != (state.to_move_ == PlayerId::kP1)) {
      throw PreconditionError("to_move disagrees with mark counts");
    }
    state.outcome_ = state.scan_outcome();
    return state;
  }

  friend bool operator==(const GameState& a, const GameState& b) {
    return a.kind_ == b.kind_ && a.size_ == b.size_ &&
           a.win_length_ == b.win_length_ && a.to_move_ == b.to_move_ &&
           a.depth_ == b.depth_ && a.cells_ == b.cells_;
  }

 private:
  static char glyph(Cell c) {
    return c == Cell::kP1 ? 'X' : c == Cell::kP2 ? 'O' : '.';
  }

  int run_length(int row, int col, int dr, int dc, Cell mark) const {
    int n = 0;
    for (int r = row + dr, c = col + dc;
         r >= 0 && r < size_ && c >= 0 && c < size_ && at(r, c) == mark;
         r += dr, c += dc) {
      ++n;
    }
    return n;
  }

  bool completes_line(const Action& a) const {
    static constexpr int kDirs[4][2] = {{0, 1}, {1, 0}, {1, 1}, {1, -1}};
    const Cell mark = at(a);
    for (const auto& d : kDirs) {
      const int len = 1 + run_length(a.row, a.col, d[0], d[1], mark) +
                      run_length(a.row, a.col, -d[0], -d[1], mark);
      if (len >= win_length_) return true;
    }
    return false;
  }

  Outcome scan_outcome() const {
    bool p1_wins = false;
    bool p2_wins = false;
    for (int r = 0; r < size_; ++r) {
      for (int c = 0; c < size_; ++c) {
        const Cell m = at(r, c);
        if (m == Cell::kEmpty || !completes_line({r, c})) continue;
        (m == Cell::kP1 ? p1_wins : p2_wins) = true;
      }
    }
    if (p1_wins && p2_wins) {
      throw PreconditionError("both players have a completed line");
    }
    if (p1_wins) return Outcome::win(PlayerId::kP1);
    if (p2_wins) return Outcome::win(PlayerId::kP2);
    if (depth_ == num_cells()) return Outcome::draw();
    return Outcome::ongoing();
  }

  std::array<Cell, kMaxSize * kMaxSize> cells_{};
  GameKind kind_;
  int size_;
  int win_length_;
  int depth_ = 0;
  PlayerId to_move_ = PlayerId::kP1;
  Outcome outcome_;
};

inline std::vector<Action> legal_actions(const GameState& s) {
  return s.legal_actions();
}

inline GameState apply(const GameState& s, const Action& a) {
  return s.apply(a);
}

inline Outcome terminal_status(const GameState& s) { return s.outcome(); }

}  // namespace aoap
