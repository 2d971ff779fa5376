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

// Command-line front end: flag parsing, presets, and the pcs / tournament /
// search / selftest subcommands. The `aoap_mcts` tool is a thin main() over
// run_cli().

#pragma once

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "aoap/bench.hpp"
#include "aoap/errors.hpp"
#include "aoap/minimax.hpp"
#include "aoap/plot.hpp"
#include "aoap/policies.hpp"
#include "aoap/search.hpp"
#include "aoap/testing/oracles.hpp"

namespace aoap::cli {

inline constexpr const char* kSeedEnv = "AOAP_MCTS_SEED";
inline constexpr std::uint64_t kDefaultSeed = 42;

enum ExitCode : int { kOk = 0, kRuntimeError = 1, kUsageError = 2 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// --help / --version: message goes to stdout, exit 0.
class InfoRequested : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Named constant sets. Explicit flags override whatever a preset sets.
struct Preset {
  std::string name;
  GameKind game = GameKind::kTicTacToe;
  int board = 3;
  double prior_mean = 0.0;
  double prior_var = 100.0;
  int n0 = 10;
  double epsilon = 1e-5;
  double cp = 1.0;
  std::uint64_t rollouts_per_move = 200;
  std::uint64_t rounds = 1000;
};

inline std::optional<Preset> find_preset(const std::string& name) {
  Preset p;
  p.name = name;
  if (name == "exp1.1") return p;  // tic-tac-toe precision
  if (name == "exp1.2") {          // tic-tac-toe win/draw/lose
    p.prior_mean = 1.0;
    return p;
  }
  if (name == "exp2.2") {  // gomoku win/draw/lose
    p.game = GameKind::kGomoku;
    p.board = 8;
    p.prior_mean = 1.0;
    p.prior_var = 36.0;
    p.rollouts_per_move = 2000;
    return p;
  }
  return std::nullopt;
}

struct RunConfig {
  std::string subcommand;
  std::string preset;
  GameKind game = GameKind::kTicTacToe;
  int board = 3;
  int setup = 1;
  OpponentModel opponent;
  std::vector<PolicyConfig> policies;
  std::vector<std::uint64_t> rollout_grid;
  std::uint64_t macros = 10000;
  std::uint64_t seed = kDefaultSeed;
  std::string seed_source = "default";  // flag | env | default
  std::string out = "-";
  std::string plot;
  int workers = 1;
  std::uint64_t rounds = 1000;
  std::uint64_t rollouts_per_move = 200;
  OpponentModel training_opponent;
  bool alternate = false;
  // search subcommand
  std::string board_text;
  std::uint64_t rollouts = 300;
  bool trace = false;
  bool dump_tree = false;
};

// "80:300:20" (inclusive start:stop:step), "100,200,300" or "300".
inline std::vector<std::uint64_t> parse_rollout_grid(const std::string& text) {
  auto to_u64 = [&](const std::string& s) -> std::uint64_t {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || s.empty() || v < 1) {
      throw UsageError("bad roll-out count '" + s + "' in --rollouts " + text);
    }
    return static_cast<std::uint64_t>(v);
  };
  std::vector<std::uint64_t> grid;
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream in(text);
    for (std::string p; std::getline(in, p, ':');) parts.push_back(p);
    if (parts.size() != 3) throw UsageError("--rollouts range must be start:stop:step");
    const auto start = to_u64(parts[0]), stop = to_u64(parts[1]), step = to_u64(parts[2]);
    if (stop < start) throw UsageError("--rollouts range has stop < start");
    for (std::uint64_t t = start; t <= stop; t += step) grid.push_back(t);
  } else {
    std::stringstream in(text);
    for (std::string p; std::getline(in, p, ',');) grid.push_back(to_u64(p));
  }
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (grid[i] <= grid[i - 1]) throw UsageError("--rollouts must be strictly increasing");
  }
  if (grid.empty()) throw UsageError("--rollouts is empty");
  return grid;
}

inline OpponentModel parse_opponent(const std::string& name, double cp) {
  if (name == "random") return OpponentModel::random();
  if (name == "uct") return OpponentModel::uct_lcb(cp);
  throw UsageError("unknown opponent '" + name + "' (expected random|uct)");
}

inline GameKind parse_game(const std::string& name) {
  if (name == "tictactoe") return GameKind::kTicTacToe;
  if (name == "gomoku") return GameKind::kGomoku;
  throw UsageError("unknown game '" + name + "' (expected tictactoe|gomoku)");
}

inline std::uint64_t parse_seed(const std::string& text, const std::string& origin) {
  try {
    std::size_t used = 0;
    const auto v = std::stoull(text, &used, 0);
    if (used == text.size() && text[0] != '-') return v;
  } catch (const std::exception&) {
  }
  throw UsageError("bad seed '" + text + "' from " + origin);
}

namespace detail {

// Flags shared by the subcommands, bound to temporaries so that presets can
// be applied before explicit values.
struct Knobs {
  std::string preset;
  std::string game = "tictactoe";
  int board = 0;
  std::string policies;
  std::string seed;
  std::string out = "-";
  int workers = 1;
  int n0 = 10;
  double epsilon = 1e-5;
  double cp = 1.0;
  double prior_mean = 0.0;
  std::string prior_var = "100";
  int ttts_rounds = 10;
  double tie_tolerance = 1e-3;
  std::string variance_norm = "population";
};

inline void add_policy_flags(CLI::App* sub, Knobs& k) {
  sub->add_option("--preset", k.preset,
                  "Constant preset: exp1.1 (tic-tac-toe PCS; n0=10, eps=1e-5, "
                  "prior N(0,10^2), C_p=1), exp1.2 (tic-tac-toe games; prior mean 1, "
                  "200 roll-outs/move, 1000 rounds), exp2.2 (8x8 gomoku games; prior "
                  "N(1,36), 2000 roll-outs/move)")
      ->check(CLI::IsMember({"exp1.1", "exp1.2", "exp2.2"}));
  sub->add_option("--n0", k.n0, "Warm-up samples per action")->capture_default_str();
  sub->add_option("--epsilon", k.epsilon, "Sample-variance floor")->capture_default_str();
  sub->add_option("--cp", k.cp, "UCT exploration weight C_p")->capture_default_str();
  sub->add_option("--prior-mean", k.prior_mean, "Prior mean Q0")->capture_default_str();
  sub->add_option("--prior-var", k.prior_var,
                  "Prior variance (sigma0^2); 'inf' for the uninformative prior")
      ->capture_default_str();
  sub->add_option("--ttts-rounds", k.ttts_rounds, "TTTS resampling truncation")
      ->capture_default_str();
  sub->add_option("--aoap-tie-tolerance", k.tie_tolerance,
                  "Relative AOAP score tie band; 0 = exact ties only")
      ->capture_default_str();
  sub->add_option("--variance-norm", k.variance_norm,
                  "Sample variance divisor: population (N) or sample (N-1)")
      ->check(CLI::IsMember({"population", "sample"}))
      ->capture_default_str();
  sub->add_option("--seed", k.seed,
                  std::string("Master seed (default: $") + kSeedEnv + ", else " +
                      std::to_string(kDefaultSeed) + ")");
}

inline bool given(CLI::App* sub, const std::string& flag) {
  return sub->get_option(flag)->count() > 0;
}

inline PolicyConfig base_policy(CLI::App* sub, const Knobs& k, const Preset& preset) {
  PolicyConfig p;
  p.n0 = given(sub, "--n0") ? k.n0 : preset.n0;
  p.epsilon = given(sub, "--epsilon") ? k.epsilon : preset.epsilon;
  p.cp = given(sub, "--cp") ? k.cp : preset.cp;
  const double mean = given(sub, "--prior-mean") ? k.prior_mean : preset.prior_mean;
  if (given(sub, "--prior-var")) {
    if (k.prior_var == "inf") {
      p.prior = Prior::uninformative();
    } else {
      double v = 0.0;
      try {
        v = std::stod(k.prior_var);
      } catch (const std::exception&) {
        throw UsageError("bad --prior-var '" + k.prior_var + "'");
      }
      if (!(v > 0.0) || !std::isfinite(v)) {
        throw UsageError("--prior-var must be positive or 'inf'");
      }
      p.prior = Prior::normal(mean, v);
    }
  } else {
    p.prior = Prior::normal(mean, preset.prior_var);
  }
  p.ttts_truncation = k.ttts_rounds;
  p.aoap_tie_tolerance = k.tie_tolerance;
  p.variance_norm =
      k.variance_norm == "sample" ? VarianceNorm::kSample : VarianceNorm::kPopulation;
  try {
    p.validate();
  } catch (const PreconditionError& e) {
    throw UsageError(e.what());
  }
  return p;
}

inline std::vector<PolicyConfig> policy_list(const std::string& names, const PolicyConfig& base) {
  std::vector<PolicyConfig> out;
  std::stringstream in(names);
  for (std::string name; std::getline(in, name, ',');) {
    const auto kind = parse_policy_kind(name);
    if (!kind) {
      throw UsageError("unknown policy '" + name + "' (expected aoap|uct|ocba|ttts|random)");
    }
    PolicyConfig p = base;
    p.kind = *kind;
    out.push_back(p);
  }
  if (out.empty()) throw UsageError("--policies is empty");
  return out;
}

inline void resolve_seed(CLI::App* sub, const Knobs& k, RunConfig& cfg) {
  if (given(sub, "--seed")) {
    cfg.seed = parse_seed(k.seed, "--seed");
    cfg.seed_source = "flag";
  } else if (const char* env = std::getenv(kSeedEnv); env && *env) {
    cfg.seed = parse_seed(env, kSeedEnv);
    cfg.seed_source = "env";
  }
}

}  // namespace detail

// Parses a full argument vector (without the program name). Throws
// UsageError on bad input and InfoRequested for --help.
inline RunConfig parse_args(const std::vector<std::string>& args) {
  CLI::App app{"Monte Carlo tree search with dynamic-sampling tree policies", "aoap_mcts"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));
  app.footer("Master seed precedence: --seed, then $" + std::string(kSeedEnv) + ", then " +
             std::to_string(kDefaultSeed) + ". Exit codes: 0 ok, 1 runtime error, 2 usage error.");

  detail::Knobs k;
  RunConfig cfg;
  std::string opponent = "random", training = "random", rollouts = "80:300:20";

  auto* pcs = app.add_subcommand("pcs", "Estimate probability of correct selection curves");
  pcs->add_option("--game", k.game, "tictactoe (gomoku is rejected)")->capture_default_str();
  pcs->add_option("--setup", cfg.setup, "Opening: 1 = X in a corner, 2 = X in the center")
      ->check(CLI::IsMember({1, 2}))
      ->capture_default_str();
  pcs->add_option("--opponent", opponent, "In-tree opponent: random | uct")->capture_default_str();
  pcs->add_option("--policies", k.policies, "Comma list of aoap,uct,ocba,ttts,random")
      ->default_str("aoap,uct,ocba,ttts");
  pcs->add_option("--rollouts", rollouts, "Roll-out grid: start:stop:step or a comma list")
      ->capture_default_str();
  pcs->add_option("--macros", cfg.macros, "Independent searches per grid point")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  pcs->add_option("--out", k.out, "CSV output path ('-' = stdout)")->capture_default_str();
  pcs->add_option("--plot", cfg.plot, "Also write an SVG chart to this path");
  pcs->add_option("--workers", k.workers, "Worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  detail::add_policy_flags(pcs, k);

  detail::Knobs tk;
  auto* tour = app.add_subcommand("tournament", "Round-robin win/draw/lose tables and net wins");
  tour->add_option("--game", tk.game, "tictactoe | gomoku")->capture_default_str();
  tour->add_option("--board", tk.board, "Board size (tic-tac-toe: 3; gomoku default 8)");
  tour->add_option("--policies", tk.policies, "Comma list of random,uct,ocba,ttts,aoap")
      ->default_str("random,uct,ocba,ttts,aoap");
  tour->add_option("--rounds", cfg.rounds, "Games per ordered pairing")
      ->check(CLI::PositiveNumber)
      ->default_str("1000");
  tour->add_option("--rollouts-per-move", cfg.rollouts_per_move, "Search budget per move")
      ->check(CLI::PositiveNumber)
      ->default_str("200 (exp2.2: 2000)");
  tour->add_option("--training-opponent", training, "In-tree opponent model: random | uct")
      ->capture_default_str();
  tour->add_flag("--alternate", cfg.alternate, "Swap seats on odd rounds (default: P1 always first)");
  tour->add_option("--out", tk.out, "CSV output path ('-' = stdout)")->capture_default_str();
  tour->add_option("--workers", tk.workers, "Worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  detail::add_policy_flags(tour, tk);

  detail::Knobs sk;
  auto* search = app.add_subcommand("search", "Run one search and print the recommended move");
  search->add_option("--board-file", cfg.board_text, "Position file (default: empty tic-tac-toe)");
  search->add_option("--policy", sk.policies, "aoap | uct | ocba | ttts")->default_str("aoap");
  search->add_option("--rollouts", cfg.rollouts, "Roll-outs")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  search->add_option("--opponent", opponent, "In-tree opponent: random | uct")
      ->capture_default_str();
  search->add_flag("--trace", cfg.trace, "Print one line per selection to stderr");
  search->add_flag("--dump-tree", cfg.dump_tree, "Print the final tree");
  detail::add_policy_flags(search, sk);

  app.add_subcommand("selftest", "Run the built-in invariant and oracle checks");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw InfoRequested(app.help());
  } catch (const CLI::CallForAllHelp&) {
    throw InfoRequested(app.help("", CLI::AppFormatMode::All));
  } catch (const CLI::CallForVersion&) {
    throw InfoRequested(kVersion);
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  CLI::App* sub = app.get_subcommands().front();
  cfg.subcommand = sub->get_name();
  if (cfg.subcommand == "selftest") return cfg;

  detail::Knobs& kn = sub == pcs ? k : sub == tour ? tk : sk;
  const std::string default_preset = cfg.subcommand == "tournament" ? "exp1.2" : "exp1.1";
  cfg.preset = kn.preset.empty() ? default_preset : kn.preset;
  const Preset preset = *find_preset(cfg.preset);
  const PolicyConfig base = detail::base_policy(sub, kn, preset);
  detail::resolve_seed(sub, kn, cfg);
  cfg.out = kn.out;
  cfg.workers = kn.workers;

  if (cfg.subcommand == "pcs") {
    cfg.game = parse_game(k.game);
    if (cfg.game == GameKind::kGomoku) {
      throw UsageError("Gomoku PCS unsupported (optimal-move labeling out of scope)");
    }
    cfg.opponent = parse_opponent(opponent, base.cp);
    cfg.policies = detail::policy_list(k.policies.empty() ? "aoap,uct,ocba,ttts" : k.policies, base);
    cfg.rollout_grid = parse_rollout_grid(rollouts);
  } else if (cfg.subcommand == "tournament") {
    cfg.game = detail::given(tour, "--game") ? parse_game(tk.game) : preset.game;
    if (tk.board > 0) {
      cfg.board = tk.board;
    } else if (cfg.game == GameKind::kTicTacToe) {
      cfg.board = 3;
    } else {
      cfg.board = preset.game == GameKind::kGomoku ? preset.board : 8;
    }
    if (cfg.game == GameKind::kTicTacToe && cfg.board != 3) {
      throw UsageError("tic-tac-toe is played on a 3x3 board");
    }
    if (cfg.game == GameKind::kGomoku && (cfg.board < 5 || cfg.board > GameState::kMaxSize)) {
      throw UsageError("gomoku board must be between 5 and " + std::to_string(GameState::kMaxSize));
    }
    if (!detail::given(tour, "--rounds")) cfg.rounds = preset.rounds;
    if (!detail::given(tour, "--rollouts-per-move")) cfg.rollouts_per_move = preset.rollouts_per_move;
    cfg.training_opponent = parse_opponent(training, base.cp);
    cfg.policies = detail::policy_list(
        tk.policies.empty() ? "random,uct,ocba,ttts,aoap" : tk.policies, base);
  } else {  // search
    cfg.opponent = parse_opponent(opponent, base.cp);
    cfg.policies = detail::policy_list(sk.policies.empty() ? "aoap" : sk.policies, base);
    if (cfg.policies.size() != 1 || cfg.policies[0].kind == PolicyKind::kRandom) {
      throw UsageError("search takes exactly one tree policy");
    }
  }
  return cfg;
}

// Writes to the named file, or stdout for "-".
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path != "-") {
      file_.open(path, std::ios::binary);
      if (!file_) throw std::runtime_error("cannot open " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

inline CsvMetadata metadata_of(const RunConfig& cfg) {
  CsvMetadata m;
  m.seed = cfg.seed;
  m.preset = cfg.preset;
  m.first_mover = cfg.alternate ? "alternate" : "P1";
  return m;
}

inline int run_pcs_command(const RunConfig& cfg) {
  PcsSpec spec;
  spec.game = cfg.game;
  spec.setup = cfg.setup;
  spec.opponent = cfg.opponent;
  spec.policies = cfg.policies;
  spec.rollout_grid = cfg.rollout_grid;
  spec.macros = cfg.macros;
  spec.master_seed = cfg.seed;
  const auto rows = run_pcs(spec, cfg.workers);
  Output out(cfg.out);
  write_metadata(out.stream(), metadata_of(cfg));
  write_pcs_csv(out.stream(), spec, rows);
  if (!cfg.plot.empty()) emit_plot(rows, cfg.plot);
  return kOk;
}

inline int run_tournament_command(const RunConfig& cfg) {
  TournamentSpec spec;
  spec.game = cfg.game;
  spec.board_size = cfg.board;
  spec.per_move_rollouts = cfg.rollouts_per_move;
  spec.rounds = cfg.rounds;
  spec.master_seed = cfg.seed;
  spec.training_opponent = cfg.training_opponent;
  spec.alternate_seats = cfg.alternate;
  const auto matrix = round_robin(cfg.policies, spec, cfg.workers);
  const auto net = net_win(matrix);
  Output out(cfg.out);
  write_metadata(out.stream(), metadata_of(cfg));
  out.stream() << "# training_opponent=" << to_string(cfg.training_opponent.kind) << "\n";
  write_tournament_header(out.stream());
  for (std::size_t i = 0; i < cfg.policies.size(); ++i) {
    for (std::size_t j = 0; j < cfg.policies.size(); ++j) {
      spec.p1 = cfg.policies[i];
      spec.p2 = cfg.policies[j];
      write_tournament_row(out.stream(), spec, matrix[i][j]);
    }
  }
  for (std::size_t i = 0; i < cfg.policies.size(); ++i) {
    out.stream() << "# net_win " << to_string(cfg.policies[i].kind) << '=' << net[i] << "\n";
  }
  return kOk;
}

inline int run_search_command(const RunConfig& cfg) {
  GameState root = GameState::tictactoe();
  if (!cfg.board_text.empty()) {
    std::ifstream in(cfg.board_text);
    if (!in) throw std::runtime_error("cannot open " + cfg.board_text);
    std::stringstream text;
    text << in.rdbuf();
    root = GameState::from_text(text.str());
  }
  RandomStream rng(cfg.seed);
  Mcts<GameState> mcts(root, cfg.policies[0], cfg.opponent, rng);
  if (cfg.trace) {
    mcts.set_trace([](const SelectionEvent& ev) { std::cerr << format_event(ev) << "\n"; });
  }
  mcts.run(cfg.rollouts);
  std::cout << "best " << to_string(mcts.best()) << "\n";
  if (cfg.dump_tree) std::cout << mcts.tree().dump();
  return kOk;
}

// Fast end-to-end checks; prints one PASS/FAIL line each.
inline int run_selftest(std::ostream& out) {
  int failures = 0;
  auto check = [&](const std::string& name, bool ok, const std::string& detail = "") {
    out << (ok ? "PASS " : "FAIL ") << name << (detail.empty() ? "" : " (" + detail + ")") << "\n";
    failures += !ok;
  };

  const auto empty = minimax_oracle(GameState::tictactoe());
  check("empty board is a draw", empty.value == 0.5);
  const auto s1 = minimax_oracle(setup_position(1));
  check("setup 1 optimal = {center}",
        s1.optimal_actions == std::vector<Action>{{1, 1}});
  const auto s2 = minimax_oracle(setup_position(2));
  check("setup 2 optimal = corners",
        s2.optimal_actions == std::vector<Action>{{0, 0}, {0, 2}, {2, 0}, {2, 2}});
  check("table solver agrees with naive minimax",
        std::abs(testing::naive_minimax_p1(setup_position(1)) - 0.5) < 1e-12 &&
            empty.value == testing::naive_minimax_p1(GameState::tictactoe()));

  RandomStream rng(derive_seed(kDefaultSeed, "selftest", 0));
  double worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    const int k = 2 + static_cast<int>(rng.uniform_index(7));
    std::vector<Candidate> cands(k);
    std::vector<NodeStats> stats(k);
    for (int i = 0; i < k; ++i) {
      NodeStats s;
      s.prior = rng.coin() ? Prior::uninformative() : Prior::normal(rng.normal(), 1.0 + 50 * rng.uniform01());
      const int n = 2 + static_cast<int>(rng.uniform_index(30));
      for (int j = 0; j < n; ++j) s.record(rng.uniform01());
      stats[i] = s;
      cands[i] = {{0, i}, s};
    }
    const auto fast = aoap_scores(cands, 1e-5);
    const auto slow = testing::brute_force_aoap_scores(stats, 1e-5);
    for (int i = 0; i < k; ++i) {
      worst = std::max(worst, std::abs(fast[i] - slow[i]) / std::max(1.0, std::abs(slow[i])));
    }
  }
  check("AOAP scores match brute force", worst <= 1e-12, "max rel diff " + std::to_string(worst));

  const auto dist = testing::random_play_distribution(GameState::tictactoe());
  check("random play distribution", std::abs(dist.p1_win - 737.0 / 1260.0) < 1e-12 &&
                                        std::abs(dist.draw - 8.0 / 63.0) < 1e-12);

  PcsSpec spec;
  spec.policies = {PolicyConfig{}};
  spec.rollout_grid = {60, 120};
  spec.macros = 64;
  const auto a = run_pcs(spec, 1);
  const auto b = run_pcs(spec, 3);
  bool same = a.size() == b.size();
  for (std::size_t i = 0; same && i < a.size(); ++i) same = a[i].hits == b[i].hits;
  check("PCS independent of worker count", same);

  TournamentSpec t;
  t.p1.kind = t.p2.kind = PolicyKind::kRandom;
  t.rounds = 4000;
  const auto w = run_tournament(t, 2);
  const double p = static_cast<double>(w.wins) / t.rounds;
  const double sd = std::sqrt(dist.p1_win * (1 - dist.p1_win) / t.rounds);
  check("random-vs-random P1 win rate", std::abs(p - dist.p1_win) <= 3 * sd,
        std::to_string(p));

  out << (failures == 0 ? "selftest: all checks passed" : "selftest: FAILED") << "\n";
  return failures == 0 ? kOk : kRuntimeError;
}

inline int run_cli(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  RunConfig cfg;
  try {
    cfg = parse_args(args);
  } catch (const InfoRequested& info) {
    std::cout << info.what() << "\n";
    return kOk;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\nRun with --help for the flag table.\n";
    return kUsageError;
  }
  try {
    if (cfg.subcommand == "pcs") return run_pcs_command(cfg);
    if (cfg.subcommand == "tournament") return run_tournament_command(cfg);
    if (cfg.subcommand == "search") return run_search_command(cfg);
    return run_selftest(std::cout);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntimeError;
  }
}

}  // namespace aoap::cli
