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
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "aoap/errors.hpp"
#include "aoap/game.hpp"
#include "aoap/minimax.hpp"
#include "aoap/policies.hpp"
#include "aoap/random.hpp"
#include "aoap/search.hpp"

namespace aoap {

inline constexpr const char* kVersion = "0.1.0";

// SplitMix64 finalizer; a bijection on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Seed of replication `index` of experiment `tag`:
//   mix64(mix64(master ^ fnv1a64(tag)) + index)
// For a fixed (master, tag) distinct indices always give distinct seeds.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::string_view tag,
                                    std::uint64_t index) {
  return mix64(mix64(master ^ fnv1a64(tag)) + index);
}

// Runs fn(0..n-1) on `workers` threads. Callers write into per-index slots,
// so results never depend on scheduling.
inline void parallel_for(std::size_t n, int workers,
                         const std::function<void(std::size_t)>& fn) {
  if (workers <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  constexpr std::size_t kChunk = 16;
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto body = [&] {
    while (!failed.load()) {
      const std::size_t begin = next.fetch_add(kChunk);
      if (begin >= n) return;
      const std::size_t end = std::min(n, begin + kChunk);
      try {
        for (std::size_t i = begin; i < end; ++i) fn(i);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::jthread> pool;
  const int count = static_cast<int>(std::min<std::size_t>(workers, n));
  pool.reserve(count);
  for (int w = 0; w < count; ++w) pool.emplace_back(body);
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

// ---------------------------------------------------------------------------
// Probability of correct selection

// One-mark tic-tac-toe openings with Player 2 to move:
// setup 1 has X in the top-left corner, setup 2 has X in the center.
inline GameState setup_position(int setup) {
  switch (setup) {
    case 1: return GameState::tictactoe().apply({0, 0});
    case 2: return GameState::tictactoe().apply({1, 1});
    default: throw PreconditionError("unknown setup " + std::to_string(setup));
  }
}

struct PcsSpec {
  GameKind game = GameKind::kTicTacToe;
  int setup = 1;
  OpponentModel opponent;
  std::vector<PolicyConfig> policies;
  std::vector<std::uint64_t> rollout_grid;
  std::uint64_t macros = 10000;
  std::uint64_t master_seed = 42;

  void validate() const {
    if (game != GameKind::kTicTacToe) {
      throw UnsupportedError(
          "Gomoku PCS unsupported (optimal-move labeling out of scope)");
    }
    if (macros < 1) throw PreconditionError("macros must be at least 1");
    if (policies.empty()) throw PreconditionError("no policies given");
    if (rollout_grid.empty()) throw PreconditionError("empty roll-out grid");
    for (std::size_t i = 0; i < rollout_grid.size(); ++i) {
      if (rollout_grid[i] < 1 || (i > 0 && rollout_grid[i] <= rollout_grid[i - 1])) {
        throw PreconditionError("roll-out grid must be positive and strictly increasing");
      }
    }
    for (const auto& p : policies) p.validate();
  }
};

struct PcsRow {
  std::string policy;
  std::uint64_t rollouts = 0;
  std::uint64_t macros = 0;
  std::uint64_t hits = 0;
  double pcs = 0.0;
  double stderr_ = 0.0;
};

inline std::string pcs_tag(const PcsSpec& spec, const PolicyConfig& p,
                           std::uint64_t rollouts) {
  return "pcs/setup" + std::to_string(spec.setup) + "/" +
         to_string(spec.opponent.kind) + "/" + to_string(p.kind) + "/" +
         std::to_string(rollouts);
}

// Picks the root action a policy recommends after `rollouts` roll-outs. The
// random policy is a uniform pick with no search.
inline Action recommend(const GameState& root, const PolicyConfig& policy,
                        std::uint64_t rollouts, const OpponentModel& opponent,
                        RandomStream& rng) {
  if (policy.kind == PolicyKind::kRandom) {
    return root.nth_empty(static_cast<int>(rng.uniform_index(root.num_empty())));
  }
  return run_search(root, rollouts, policy, opponent, rng).best;
}

// Fraction of independent searches whose recommendation is game-theoretically
// optimal, with its binomial standard error, for every (policy, T) cell.
inline std::vector<PcsRow> run_pcs(const PcsSpec& spec, int workers = 1) {
  spec.validate();
  const GameState root = setup_position(spec.setup);
  const auto optimal = minimax_oracle(root).optimal_actions;
  const std::size_t cells = spec.policies.size() * spec.rollout_grid.size();
  std::vector<std::string> tags(cells);
  for (std::size_t c = 0; c < cells; ++c) {
    tags[c] = pcs_tag(spec, spec.policies[c / spec.rollout_grid.size()],
                      spec.rollout_grid[c % spec.rollout_grid.size()]);
  }
  std::vector<std::uint8_t> correct(cells * spec.macros);
  parallel_for(correct.size(), workers, [&](std::size_t job) {
    const std::size_t c = job / spec.macros;
    const std::uint64_t m = job % spec.macros;
    const PolicyConfig& policy = spec.policies[c / spec.rollout_grid.size()];
    const std::uint64_t rollouts = spec.rollout_grid[c % spec.rollout_grid.size()];
    RandomStream rng(derive_seed(spec.master_seed, tags[c], m));
    const Action a = recommend(root, policy, rollouts, spec.opponent, rng);
    correct[job] = std::find(optimal.begin(), optimal.end(), a) != optimal.end();
  });
  std::vector<PcsRow> rows;
  rows.reserve(cells);
  for (std::size_t c = 0; c < cells; ++c) {
    PcsRow row;
    row.policy = to_string(spec.policies[c / spec.rollout_grid.size()].kind);
    row.rollouts = spec.rollout_grid[c % spec.rollout_grid.size()];
    row.macros = spec.macros;
    for (std::uint64_t m = 0; m < spec.macros; ++m) row.hits += correct[c * spec.macros + m];
    row.pcs = static_cast<double>(row.hits) / static_cast<double>(row.macros);
    row.stderr_ = std::sqrt(row.pcs * (1.0 - row.pcs) / static_cast<double>(row.macros));
    rows.push_back(row);
  }
  return rows;
}

// Grid pairs (T1 < T2) of one policy where PCS(T2) < PCS(T1) - 3 (se1 + se2).
inline int monotone_violations(const std::vector<PcsRow>& rows,
                               const std::string& policy) {
  std::vector<const PcsRow*> curve;
  for (const auto& r : rows) {
    if (r.policy == policy) curve.push_back(&r);
  }
  std::sort(curve.begin(), curve.end(),
            [](const PcsRow* a, const PcsRow* b) { return a->rollouts < b->rollouts; });
  int violations = 0;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    for (std::size_t j = i + 1; j < curve.size(); ++j) {
      if (curve[j]->pcs < curve[i]->pcs - 3.0 * (curve[i]->stderr_ + curve[j]->stderr_)) {
        ++violations;
      }
    }
  }
  return violations;
}

// ---------------------------------------------------------------------------
// Tournaments

struct WdlRecord {
  std::uint64_t wins = 0;
  std::uint64_t draws = 0;
  std::uint64_t losses = 0;

  std::uint64_t total() const { return wins + draws + losses; }

  WdlRecord& operator+=(const WdlRecord& o) {
    wins += o.wins;
    draws += o.draws;
    losses += o.losses;
    return *this;
  }
  friend bool operator==(const WdlRecord&, const WdlRecord&) = default;
};

struct TournamentSpec {
  GameKind game = GameKind::kTicTacToe;
  int board_size = 3;
  PolicyConfig p1;
  PolicyConfig p2;
  std::uint64_t per_move_rollouts = 200;
  std::uint64_t rounds = 1000;
  std::uint64_t master_seed = 42;
  OpponentModel training_opponent;  // in-tree model of the other side
  bool alternate_seats = false;     // swap seats on odd rounds

  GameState initial_state() const {
    return game == GameKind::kTicTacToe ? GameState::tictactoe()
                                        : GameState::gomoku(board_size);
  }

  void validate() const {
    if (per_move_rollouts < 1) throw PreconditionError("per-move roll-outs must be at least 1");
    if (rounds < 1) throw PreconditionError("rounds must be at least 1");
    if (game == GameKind::kTicTacToe && board_size != 3) {
      throw PreconditionError("tic-tac-toe is played on a 3x3 board");
    }
    p1.validate();
    p2.validate();
  }
};

struct GameRecord {
  std::vector<Action> moves;
  Outcome outcome;
};

// Plays one full game. Each ply the side to move runs a fresh search from
// the current position (no tree reuse); random players move uniformly.
inline GameRecord play_game(GameState state, const PolicyConfig& p1,
                            const PolicyConfig& p2, std::uint64_t per_move_rollouts,
                            const OpponentModel& training_opponent, RandomStream& rng) {
  GameRecord rec;
  while (!state.is_terminal()) {
    const PolicyConfig& mover = state.to_move() == PlayerId::kP1 ? p1 : p2;
    const Action a = recommend(state, mover, per_move_rollouts, training_opponent, rng);
    rec.moves.push_back(a);
    state = state.apply(a);
  }
  rec.outcome = state.outcome();
  return rec;
}

inline std::string tournament_tag(const TournamentSpec& spec) {
  return std::string("tournament/") + to_string(spec.game) + "/" +
         std::to_string(spec.board_size) + "/" + to_string(spec.p1.kind) + "/" +
         to_string(spec.p2.kind);
}

// Win/draw/loss counts from the point of view of spec.p1's policy.
inline WdlRecord run_tournament(const TournamentSpec& spec, int workers = 1) {
  spec.validate();
  const std::string tag = tournament_tag(spec);
  std::vector<std::int8_t> result(spec.rounds);  // +1 win, 0 draw, -1 loss
  parallel_for(spec.rounds, workers, [&](std::size_t r) {
    RandomStream rng(derive_seed(spec.master_seed, tag, r));
    const bool swapped = spec.alternate_seats && (r % 2 == 1);
    const GameRecord g = swapped
        ? play_game(spec.initial_state(), spec.p2, spec.p1, spec.per_move_rollouts,
                    spec.training_opponent, rng)
        : play_game(spec.initial_state(), spec.p1, spec.p2, spec.per_move_rollouts,
                    spec.training_opponent, rng);
    const PlayerId seat = swapped ? PlayerId::kP2 : PlayerId::kP1;
    const double score = reward(g.outcome, seat);
    result[r] = score == 1.0 ? 1 : score == 0.0 ? -1 : 0;
  });
  WdlRecord rec;
  for (auto v : result) {
    if (v > 0) ++rec.wins;
    else if (v < 0) ++rec.losses;
    else ++rec.draws;
  }
  return rec;
}

// Every ordered pairing (row policy as Player 1, column policy as Player 2).
inline std::vector<std::vector<WdlRecord>> round_robin(
    const std::vector<PolicyConfig>& policies, TournamentSpec base, int workers = 1) {
  std::vector<std::vector<WdlRecord>> matrix(policies.size(),
                                             std::vector<WdlRecord>(policies.size()));
  for (std::size_t i = 0; i < policies.size(); ++i) {
    for (std::size_t j = 0; j < policies.size(); ++j) {
      base.p1 = policies[i];
      base.p2 = policies[j];
      matrix[i][j] = run_tournament(base, workers);
    }
  }
  return matrix;
}

// Cumulative wins minus cumulative losses of each policy over both seats.
// Cell (i, j) is from the row policy's point of view.
inline std::vector<long long> net_win(const std::vector<std::vector<WdlRecord>>& matrix) {
  const std::size_t n = matrix.size();
  std::vector<long long> net(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (matrix[i].size() != n) throw PreconditionError("net_win needs a square matrix");
    for (std::size_t j = 0; j < n; ++j) {
      const auto& c = matrix[i][j];
      const auto diff = static_cast<long long>(c.wins) - static_cast<long long>(c.losses);
      net[i] += diff;
      net[j] -= diff;
    }
  }
  return net;
}

// ---------------------------------------------------------------------------
// CSV

struct CsvMetadata {
  std::uint64_t seed = 0;
  std::string preset;
  std::string first_mover = "P1";
};

inline void write_metadata(std::ostream& out, const CsvMetadata& meta) {
  out << "# version=" << kVersion << "\n";
  out << "# seed=" << meta.seed << "\n";
  out << "# preset=" << meta.preset << "\n";
  out << "# first_mover=" << meta.first_mover << "\n";
  out << "# rng=" << RandomStream::kAlgorithm << "\n";
}

inline std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

inline void write_pcs_csv(std::ostream& out, const PcsSpec& spec,
                          const std::vector<PcsRow>& rows) {
  out << "game,setup,opponent,policy,T,macros,pcs,stderr,seed\n";
  for (const auto& r : rows) {
    out << to_string(spec.game) << ',' << spec.setup << ','
        << to_string(spec.opponent.kind) << ',' << r.policy << ',' << r.rollouts
        << ',' << r.macros << ',' << fixed6(r.pcs) << ',' << fixed6(r.stderr_) << ','
        << spec.master_seed << "\n";
  }
}

inline void write_tournament_header(std::ostream& out) {
  out << "game,board,p1,p2,rounds,wins,draws,losses,seed\n";
}

inline void write_tournament_row(std::ostream& out, const TournamentSpec& spec,
                                 const WdlRecord& rec) {
  out << to_string(spec.game) << ',' << spec.board_size << ',' << to_string(spec.p1.kind)
      << ',' << to_string(spec.p2.kind) << ',' << spec.rounds << ',' << rec.wins << ','
      << rec.draws << ',' << rec.losses << ',' << spec.master_seed << "\n";
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(field);
  return out;
}

// Reads rows written by write_pcs_csv; comment lines and the header are
// skipped.
inline std::vector<PcsRow> read_pcs_csv(std::istream& in) {
  std::vector<PcsRow> rows;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    const auto f = split_csv_line(line);
    if (f.size() != 9) throw PreconditionError("bad pcs row: " + line);
    PcsRow r;
    r.policy = f[3];
    r.rollouts = std::stoull(f[4]);
    r.macros = std::stoull(f[5]);
    r.pcs = std::stod(f[6]);
    r.stderr_ = std::stod(f[7]);
    r.hits = static_cast<std::uint64_t>(std::llround(r.pcs * static_cast<double>(r.macros)));
    rows.push_back(r);
  }
  return rows;
}

}  // namespace aoap
