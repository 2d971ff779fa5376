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

#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <set>
#include <vector>

#include "aoap/bench.hpp"
#include "aoap/search.hpp"
#include "aoap/testing/oracles.hpp"

namespace aoap {
namespace {

using Tree = SearchTree<GameState>;

GameState board(const std::string& rows, const char* mover) {
  std::string text = std::string("game=tictactoe size=3 to_move=") + mover + "\n";
  for (int r = 0; r < 3; ++r) text += rows.substr(r * 3, 3) + "\n";
  return GameState::from_text(text);
}

PolicyConfig config_of(PolicyKind kind) {
  PolicyConfig c;
  c.kind = kind;
  return c;
}

const PolicyKind kTreePolicies[] = {PolicyKind::kAoap, PolicyKind::kUct, PolicyKind::kOcba,
                                    PolicyKind::kTtts};

// Structural and numerical invariants that must hold after every roll-out.
void check_tree(const Tree& tree, std::uint64_t rollouts) {
  const auto& root = tree.root();
  ASSERT_EQ(root.node_visits, rollouts);
  std::uint64_t edge_sum = 0;
  for (const auto& e : root.edges) edge_sum += e.stats.visits;
  ASSERT_EQ(edge_sum, rollouts);
  for (NodeId id = 0; id < tree.size(); ++id) {
    const auto& n = tree.node(id);
    double vmax = -1.0;
    for (std::size_t i = 0; i < n.edges.size(); ++i) {
      const auto& st = n.edges[i].stats;
      ASSERT_EQ(tree.node(n.children[i]).parent, id);
      ASSERT_EQ(n.state.apply(n.edges[i].action), tree.node(n.children[i]).state);
      if (st.visits == 0) continue;
      ASSERT_GE(st.mean, 0.0);
      ASSERT_LE(st.mean, 1.0);
      ASSERT_GE(st.sample_variance(), -1e-15);
      ASSERT_LE(st.sample_variance(), 0.25 + 1e-12);
      vmax = std::max(vmax, st.mean);
    }
    if (n.has_visited_edge()) {
      ASSERT_EQ(n.value_estimate, vmax);
    }
  }
}

TEST(Search, SingleLegalActionIsReturned) {
  const auto s = board("XOXXOOOX.", "X");
  ASSERT_EQ(s.legal_actions().size(), 1u);
  for (auto kind : kTreePolicies) {
    RandomStream rng(1);
    EXPECT_EQ(run_search(s, 25, config_of(kind), OpponentModel::random(), rng).best,
              (Action{2, 2}));
  }
}

TEST(Search, FindsTheWinningMove) {
  const auto s = board("XX.OO....", "X");
  for (auto kind : kTreePolicies) {
    for (int seed = 0; seed < 50; ++seed) {
      RandomStream rng(derive_seed(3, "forced-win", seed));
      ASSERT_EQ(run_search(s, 500, config_of(kind), OpponentModel::random(), rng).best,
                (Action{0, 2}))
          << to_string(kind) << " seed " << seed;
    }
  }
}

TEST(Search, Errors) {
  RandomStream rng(2);
  EXPECT_THROW(run_search(GameState::tictactoe(), 0, PolicyConfig{}, OpponentModel::random(), rng),
               PreconditionError);
  EXPECT_THROW(run_search(board("XXXOO....", "O"), 10, PolicyConfig{}, OpponentModel::random(), rng),
               PreconditionError);
  PolicyConfig bad;
  bad.n0 = 0;
  EXPECT_THROW(Mcts<GameState>(GameState::tictactoe(), bad, OpponentModel::random(), rng),
               PreconditionError);
}

TEST(Descend, FreshRootExpandsOneChild) {
  RandomStream rng(3);
  Mcts<GameState> m(GameState::tictactoe(), PolicyConfig{}, OpponentModel::random(), rng);
  const auto path = m.descend();
  ASSERT_EQ(path.steps.size(), 1u);
  EXPECT_EQ(path.steps[0].node, m.tree().root_id());
  EXPECT_EQ(m.tree().root().children.size(), 1u);
  EXPECT_EQ(path.leaf, m.tree().root().children[0]);
}

TEST(Descend, RoutesThroughUnderSampledChildren) {
  RandomStream rng(4);
  Mcts<GameState> m(board("XOXXOO...", "X"), PolicyConfig{}, OpponentModel::random(), rng);
  m.run(3);  // expands all three root children
  ASSERT_EQ(m.tree().root().edges.size(), 3u);
  for (int i = 0; i < 10; ++i) {
    const auto path = m.descend();
    const auto& e = m.tree().root().edges[path.steps[0].edge];
    EXPECT_LT(e.stats.visits, 10u);
    m.backpropagate(path, m.rollout_from(path.leaf));
  }
}

TEST(Descend, WarmedTwoPlyTreeInvokesBothSelectors) {
  const auto s = board("XOXXOO.X.", "O");
  RandomStream rng(5);
  Mcts<GameState> m(s, PolicyConfig{}, OpponentModel::uct_lcb(1.0), rng);
  m.run(200);
  std::vector<SelectionEvent> events;
  m.set_trace([&](const SelectionEvent& ev) { events.push_back(ev); });
  const auto path = m.descend();
  EXPECT_EQ(path.steps.size(), 2u);
  EXPECT_TRUE(m.tree().node(path.leaf).is_terminal);
  ASSERT_EQ(events.size(), 2u);
  EXPECT_EQ(events[0].policy, "aoap");
  EXPECT_EQ(events[0].scores.size(), 2u);
  EXPECT_EQ(events[1].policy, "lcb");
  EXPECT_EQ(events[0].chosen, path.steps[0].action);
  EXPECT_NE(format_event(events[0]).find("policy=aoap"), std::string::npos);
}

TEST(Expand, SamplesWithoutReplacement) {
  RandomStream rng(6);
  Mcts<GameState> m(GameState::tictactoe(), PolicyConfig{}, OpponentModel::random(), rng);
  m.expand(m.tree().root_id());
  EXPECT_EQ(m.tree().root().children.size(), 1u);
  for (int i = 1; i < 9; ++i) m.expand(m.tree().root_id());
  std::set<Action> seen;
  for (const auto& e : m.tree().root().edges) seen.insert(e.action);
  EXPECT_EQ(seen.size(), 9u);
  EXPECT_THROW(m.expand(m.tree().root_id()), PreconditionError);
}

TEST(Rollout, TerminalLeaves) {
  RandomStream rng(7);
  EXPECT_EQ(rollout(board("XXXOO....", "O"), PlayerId::kP1, rng), 1.0);
  EXPECT_EQ(rollout(board("XXXOO....", "O"), PlayerId::kP2, rng), 0.0);
  EXPECT_EQ(rollout(board("XOXXOOOXX", "O"), PlayerId::kP2, rng), 0.5);
}

TEST(Rollout, AllDrawingPositionAlwaysDraws) {
  // The reachable ongoing position with the most empty cells whose every
  // continuation is a draw, as established by enumeration.
  std::optional<GameState> found;
  std::set<std::string> seen;
  std::function<void(const GameState&)> walk = [&](const GameState& s) {
    if (s.is_terminal() || !seen.insert(s.to_text()).second) return;
    if ((!found || s.num_empty() > found->num_empty()) &&
        testing::random_play_distribution(s).draw == 1.0) {
      found = s;
    }
    for (const auto& a : s.legal_actions()) walk(s.apply(a));
  };
  walk(GameState::tictactoe());
  ASSERT_TRUE(found.has_value());
  EXPECT_GE(found->num_empty(), 2);
  RandomStream rng(8);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(rollout(*found, PlayerId::kP1, rng), 0.5);
}

TEST(Rollout, RewardsAreDiscrete) {
  RandomStream rng(9);
  for (int i = 0; i < 2000; ++i) {
    const double r = rollout(GameState::gomoku(6), PlayerId::kP2, rng);
    ASSERT_TRUE(r == 0.0 || r == 0.5 || r == 1.0);
  }
}

TEST(Backpropagate, SingleChainAndSiblings) {
  const auto s = board("XX.OO....", "X");
  RandomStream rng(10);
  Mcts<GameState> m(s, PolicyConfig{}, OpponentModel::random(), rng);
  auto& tree = m.tree();
  const NodeId win = tree.add_child(0, {0, 2}, PolicyConfig{}.prior);
  ASSERT_TRUE(tree.node(win).is_terminal);
  SearchPath path{{{0, *tree.root().edge_index({0, 2}), {0, 2}}}, win};
  m.backpropagate(path, 1.0);
  const auto& e = [&]() -> const NodeStats& {
    return tree.root().edges[*tree.root().edge_index({0, 2})].stats;
  };
  EXPECT_EQ(tree.node(win).value_estimate, 1.0);
  EXPECT_EQ(e().visits, 1u);
  EXPECT_EQ(e().mean, 1.0);
  EXPECT_EQ(e().sample_variance(), 0.0);
  EXPECT_EQ(tree.root().value_estimate, 1.0);

  path = SearchPath{{{0, *tree.root().edge_index({0, 2}), {0, 2}}}, win};
  m.backpropagate(path, 0.0);
  EXPECT_EQ(e().visits, 2u);
  EXPECT_DOUBLE_EQ(e().mean, 0.5);
  EXPECT_DOUBLE_EQ(e().sample_variance(), 0.25);

  // Siblings with means 0.4 and 0.7 -> root value 0.7.
  const NodeId other = tree.add_child(0, {2, 2}, PolicyConfig{}.prior);
  for (double d : {0.7}) {
    m.backpropagate(SearchPath{{{0, *tree.root().edge_index({2, 2}), {2, 2}}}, other}, d);
  }
  for (double d : {0.0, 0.4}) {  // (0,2) edge: {1, 0, 0, 0.4} -> mean 0.35
    m.backpropagate(SearchPath{{{0, *tree.root().edge_index({0, 2}), {0, 2}}}, win}, d);
  }
  EXPECT_NEAR(e().mean, 0.35, 1e-12);
  EXPECT_EQ(tree.root().value_estimate, 0.7);
}

TEST(BestAction, Rules) {
  RandomStream rng(11);
  PolicyConfig flat;
  flat.prior = Prior::uninformative();
  Tree tree(GameState::tictactoe());
  EXPECT_THROW(best_action(tree, flat), InsufficientDataError);
  tree.add_child(0, {0, 0}, flat.prior);
  tree.add_child(0, {1, 1}, flat.prior);
  auto& edges = tree.node(0).edges;
  edges[0].stats.visits = 50;
  edges[0].stats.mean = 0.6;
  edges[0].stats.m2 = 5;
  edges[1].stats.visits = 20;
  edges[1].stats.mean = 0.6;
  edges[1].stats.m2 = 1;
  EXPECT_EQ(best_action(tree, flat), (Action{0, 0}));
  edges[1].stats.mean = 0.61;
  EXPECT_EQ(best_action(tree, flat), (Action{1, 1}));
  edges[0].stats.visits = 0;
  edges[1].stats.mean = 0.1;
  EXPECT_EQ(best_action(tree, flat), (Action{1, 1}));
}

TEST(Properties, InvariantsHoldAfterEveryRollout) {
  for (auto kind : kTreePolicies) {
    for (auto opp : {OpponentModel::random(), OpponentModel::uct_lcb(1.0)}) {
      RandomStream rng(derive_seed(12, to_string(kind), static_cast<int>(opp.kind)));
      Mcts<GameState> m(setup_position(1), config_of(kind), opp, rng);
      for (std::uint64_t t = 1; t <= 600; ++t) {
        const auto path = m.descend();
        for (std::size_t i = 0; i < path.steps.size(); ++i) {
          const NodeId next = i + 1 < path.steps.size() ? path.steps[i + 1].node : path.leaf;
          ASSERT_EQ(m.tree().node(path.steps[i].node).state.apply(path.steps[i].action),
                    m.tree().node(next).state);
        }
        const double delta = m.rollout_from(path.leaf);
        ASSERT_TRUE(delta == 0.0 || delta == 0.5 || delta == 1.0);
        m.backpropagate(path, delta);
        if (t % 50 == 0 || t < 20) check_tree(m.tree(), t);
      }
    }
  }
}

TEST(Properties, IdenticalSeedsGiveIdenticalTrees) {
  for (auto kind : kTreePolicies) {
    RandomStream a(77), b(77);
    const auto ra = run_search(setup_position(2), 700, config_of(kind), OpponentModel::uct_lcb(), a);
    const auto rb = run_search(setup_position(2), 700, config_of(kind), OpponentModel::uct_lcb(), b);
    EXPECT_EQ(ra.best, rb.best);
    ASSERT_EQ(ra.tree.size(), rb.tree.size());
    for (NodeId id = 0; id < ra.tree.size(); ++id) {
      const auto& x = ra.tree.node(id);
      const auto& y = rb.tree.node(id);
      ASSERT_EQ(x.edges.size(), y.edges.size());
      ASSERT_EQ(x.value_estimate, y.value_estimate);
      for (std::size_t i = 0; i < x.edges.size(); ++i) {
        ASSERT_EQ(x.edges[i].action, y.edges[i].action);
        ASSERT_EQ(x.edges[i].stats.visits, y.edges[i].stats.visits);
        ASSERT_EQ(x.edges[i].stats.mean, y.edges[i].stats.mean);
        ASSERT_EQ(x.edges[i].stats.m2, y.edges[i].stats.m2);
      }
    }
    EXPECT_EQ(ra.tree.dump(), rb.tree.dump());
  }
}

TEST(Properties, WarmupBeforeSelection) {
  // Every root action reaches n0 samples once the budget allows it.
  RandomStream rng(13);
  const auto r = run_search(setup_position(1), 400, PolicyConfig{}, OpponentModel::random(), rng);
  ASSERT_EQ(r.tree.root().edges.size(), 8u);
  for (const auto& e : r.tree.root().edges) EXPECT_GE(e.stats.visits, 10u);
}

TEST(Gomoku, SmallBoardSearchReturnsALegalMove) {
  auto s = GameState::gomoku(7).apply({3, 3});
  for (auto kind : kTreePolicies) {
    RandomStream rng(14);
    const auto r = run_search(s, 500, config_of(kind), OpponentModel::random(), rng);
    EXPECT_EQ(s.at(r.best), Cell::kEmpty);
    check_tree(r.tree, 500);
  }
}

TEST(Dump, FormatsOneEdgePerLine) {
  RandomStream rng(15);
  const auto r = run_search(board("XOXXOOOX.", "X"), 3, PolicyConfig{}, OpponentModel::random(), rng);
  EXPECT_EQ(r.tree.dump(), "1,2:2,3,0.500000,0.000000,0.500000\n");
}

}  // namespace
}  // namespace aoap
