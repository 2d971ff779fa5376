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
#include <cassert>
#include <concepts>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "aoap/errors.hpp"
#include "aoap/game.hpp"
#include "aoap/node_stats.hpp"
#include "aoap/policies.hpp"
#include "aoap/random.hpp"

namespace aoap {

// Deterministic alternating-move game the engine can search.
template <class G>
concept TurnBasedGame = std::copyable<G> && requires(const G& g, G& m, const Action& a, int k) {
  { g.is_terminal() } -> std::convertible_to<bool>;
  { g.to_move() } -> std::same_as<PlayerId>;
  { g.outcome() } -> std::convertible_to<Outcome>;
  { g.legal_actions() } -> std::same_as<std::vector<Action>>;
  { g.apply(a) } -> std::same_as<G>;
  { m.apply_in_place(a) };
  { g.num_empty() } -> std::convertible_to<int>;
  { g.nth_empty(k) } -> std::same_as<Action>;
};

// How the side that is not searching chooses moves inside the tree.
struct OpponentModel {
  enum class Kind : std::uint8_t { kRandom, kUctLcb };
  Kind kind = Kind::kRandom;
  double cp = 1.0;

  static OpponentModel random() { return {}; }
  static OpponentModel uct_lcb(double cp = 1.0) { return {Kind::kUctLcb, cp}; }
};

inline const char* to_string(OpponentModel::Kind k) {
  return k == OpponentModel::Kind::kRandom ? "random" : "uct";
}

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

template <TurnBasedGame G>
struct Node {
  explicit Node(G s, NodeId parent_id)
      : state(std::move(s)), parent(parent_id), is_terminal(state.is_terminal()) {}

  G state;
  NodeId parent;
  // Edges sorted by action; children[i] and q_samples[i] belong to edges[i].
  std::vector<Candidate> edges;
  std::vector<NodeId> children;
  std::vector<double> q_samples;  // latest R(s, a) + V(child) per edge
  std::vector<Action> untried;
  bool untried_ready = false;
  std::uint64_t node_visits = 0;
  double value_estimate = 0.0;
  bool is_terminal;

  std::optional<std::size_t> edge_index(const Action& a) const {
    auto it = std::lower_bound(edges.begin(), edges.end(), a,
                               [](const Candidate& c, const Action& x) { return c.action < x; });
    if (it == edges.end() || it->action != a) return std::nullopt;
    return static_cast<std::size_t>(it - edges.begin());
  }

  bool has_visited_edge() const {
    for (const auto& e : edges) {
      if (e.stats.visits > 0) return true;
    }
    return false;
  }
};

// Arena-owned pure tree (no transpositions) rooted at node 0.
template <TurnBasedGame G>
class SearchTree {
 public:
  explicit SearchTree(G root_state) { nodes_.emplace_back(std::move(root_state), kNoNode); }

  NodeId root_id() const { return 0; }
  const Node<G>& root() const { return nodes_[0]; }
  const Node<G>& node(NodeId id) const { return nodes_[id]; }
  Node<G>& node(NodeId id) { return nodes_[id]; }
  std::size_t size() const { return nodes_.size(); }

  NodeId add_child(NodeId parent, const Action& a, const Prior& prior) {
    G child_state = nodes_[parent].state.apply(a);
    const NodeId id = static_cast<NodeId>(nodes_.size());
    nodes_.emplace_back(std::move(child_state), parent);
    Node<G>& p = nodes_[parent];
    auto it = std::lower_bound(p.edges.begin(), p.edges.end(), a,
                               [](const Candidate& c, const Action& x) { return c.action < x; });
    const auto pos = it - p.edges.begin();
    Candidate edge{a, NodeStats{}};
    edge.stats.prior = prior;
    p.edges.insert(it, edge);
    p.children.insert(p.children.begin() + pos, id);
    p.q_samples.insert(p.q_samples.begin() + pos, 0.0);
    return id;
  }

  // Depth-first dump, one edge per line:
  //   depth,action,N,mean,variance,value_estimate
  // with depth of the child node and its value estimate.
  std::string dump() const {
    std::string out;
    dump_from(0, 1, out);
    return out;
  }

 private:
  void dump_from(NodeId id, int depth, std::string& out) const {
    const Node<G>& n = nodes_[id];
    for (std::size_t i = 0; i < n.edges.size(); ++i) {
      const auto& e = n.edges[i];
      const double var = e.stats.visits ? e.stats.sample_variance() : 0.0;
      char buf[160];
      std::snprintf(buf, sizeof buf, "%d,%d:%d,%llu,%.6f,%.6f,%.6f\n", depth,
                    e.action.row, e.action.col,
                    static_cast<unsigned long long>(e.stats.visits), e.stats.mean, var,
                    nodes_[n.children[i]].value_estimate);
      out += buf;
      dump_from(n.children[i], depth + 1, out);
    }
  }

  std::vector<Node<G>> nodes_;
};

struct PathStep {
  NodeId node;
  std::size_t edge;  // index into node's edges; valid until the tree grows again
  Action action;
};

// Root-to-leaf route of one roll-out; the leaf is the last node visited.
struct SearchPath {
  std::vector<PathStep> steps;
  NodeId leaf = 0;
};

// One in-tree selection, for trace output.
struct SelectionEvent {
  NodeId node;
  std::string policy;
  std::vector<double> scores;
  Action chosen;
};

using TraceSink = std::function<void(const SelectionEvent&)>;

inline std::string format_event(const SelectionEvent& ev) {
  std::string s = "node=" + std::to_string(ev.node) + " policy=" + ev.policy + " scores=[";
  char buf[32];
  for (std::size_t i = 0; i < ev.scores.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%s%.6g", i ? " " : "", ev.scores[i]);
    s += buf;
  }
  s += "] chosen=" + to_string(ev.chosen);
  return s;
}

// Plays uniformly random moves for both sides until the game ends and
// returns the terminal reward for `perspective`.
template <TurnBasedGame G>
double rollout(const G& start, PlayerId perspective, RandomStream& rng) {
  if (start.is_terminal()) return reward(start.outcome(), perspective);
  G s = start;
  while (!s.is_terminal()) {
    s.apply_in_place(s.nth_empty(static_cast<int>(rng.uniform_index(s.num_empty()))));
  }
  return reward(s.outcome(), perspective);
}

// Highest posterior mean among visited root edges; ties go to more visits,
// then to the earlier action.
template <TurnBasedGame G>
Action best_action(const SearchTree<G>& tree, const PolicyConfig& config) {
  const Node<G>& root = tree.root();
  std::optional<std::size_t> best;
  double best_mean = 0.0;
  for (std::size_t i = 0; i < root.edges.size(); ++i) {
    const NodeStats& st = root.edges[i].stats;
    if (st.visits == 0) continue;
    const double m = posterior(st, config.epsilon, config.variance_norm).mean;
    if (!best || m > best_mean ||
        (m == best_mean && st.visits > root.edges[*best].stats.visits)) {
      best = i;
      best_mean = m;
    }
  }
  if (!best) throw InsufficientDataError("root has no visited children");
  return root.edges[*best].action;
}

// Monte Carlo tree search with a pluggable tree policy for the side to move
// at the root. The other side moves inside the tree according to the
// OpponentModel. All rewards are recorded from the searcher's perspective.
template <TurnBasedGame G>
class Mcts {
 public:
  Mcts(G root_state, PolicyConfig config, OpponentModel opponent, RandomStream& rng)
      : tree_(std::move(root_state)), config_(config), opponent_(opponent), rng_(rng) {
    config_.validate();
    if (tree_.root().is_terminal) {
      throw PreconditionError("cannot search from a terminal position");
    }
    searcher_ = tree_.root().state.to_move();
  }

  void set_trace(TraceSink sink) { trace_ = std::move(sink); }

  const SearchTree<G>& tree() const { return tree_; }
  SearchTree<G>& tree() { return tree_; }
  const PolicyConfig& config() const { return config_; }
  PlayerId searcher() const { return searcher_; }

  // Tree policy: descend from the root until a terminal node or a freshly
  // expanded node is reached. Children still short of their n0 warm-up
  // samples are routed through before any selector runs.
  SearchPath descend() {
    SearchPath path;
    NodeId cur = tree_.root_id();
    while (!tree_.node(cur).is_terminal) {
      const bool searching_side = tree_.node(cur).state.to_move() == searcher_;
      if (!searching_side && opponent_.kind == OpponentModel::Kind::kRandom) {
        Node<G>& n = tree_.node(cur);
        const Action a =
            n.state.nth_empty(static_cast<int>(rng_.uniform_index(n.state.num_empty())));
        if (auto idx = n.edge_index(a)) {
          path.steps.push_back({cur, *idx, a});
          cur = n.children[*idx];
          continue;
        }
        const NodeId child = tree_.add_child(cur, a, config_.prior);
        path.steps.push_back({cur, *tree_.node(cur).edge_index(a), a});
        cur = child;
        break;
      }

      if (has_untried(cur)) {
        const NodeId child = expand(cur);
        const Action a = action_to(cur, child);
        path.steps.push_back({cur, *tree_.node(cur).edge_index(a), a});
        cur = child;
        break;
      }
      Node<G>& n = tree_.node(cur);
      if (auto w = warmup_pick(n.edges, config_.n0, rng_)) {
        path.steps.push_back({cur, *w, n.edges[*w].action});
        cur = n.children[*w];
        continue;
      }
      const std::size_t idx = select_at(cur, searching_side);
      path.steps.push_back({cur, idx, n.edges[idx].action});
      cur = n.children[idx];
    }
    path.leaf = cur;
#ifndef NDEBUG
    for (std::size_t i = 0; i < path.steps.size(); ++i) {
      const NodeId next = i + 1 < path.steps.size() ? path.steps[i + 1].node : path.leaf;
      assert(tree_.node(path.steps[i].node).state.apply(path.steps[i].action) ==
             tree_.node(next).state);
    }
#endif
    return path;
  }

  // Adds one uniformly chosen untried action of `id` as a new child.
  NodeId expand(NodeId id) {
    if (!has_untried(id)) {
      throw PreconditionError("expand() on a node without untried actions");
    }
    Node<G>& n = tree_.node(id);
    const std::size_t k = rng_.uniform_index(n.untried.size());
    const Action a = n.untried[k];
    n.untried[k] = n.untried.back();
    n.untried.pop_back();
    return tree_.add_child(id, a, config_.prior);
  }

  double rollout_from(NodeId leaf) {
    return rollout(tree_.node(leaf).state, searcher_, rng_);
  }

  // Updates every node on the path in reverse order with the roll-out reward.
  void backpropagate(const SearchPath& path, double delta) {
    Node<G>& leaf = tree_.node(path.leaf);
    ++leaf.node_visits;
    if (!leaf.has_visited_edge()) {
      const double n = static_cast<double>(leaf.node_visits);
      leaf.value_estimate = ((n - 1.0) / n) * leaf.value_estimate + delta / n;
    }
    for (auto it = path.steps.rbegin(); it != path.steps.rend(); ++it) {
      Node<G>& parent = tree_.node(it->node);
      Candidate& edge = parent.edges[it->edge];
      edge.stats.record(delta);
      parent.q_samples[it->edge] =
          edge.stats.immediate_reward + tree_.node(parent.children[it->edge]).value_estimate;
      double v = -std::numeric_limits<double>::infinity();
      for (const auto& e : parent.edges) {
        if (e.stats.visits > 0) v = std::max(v, e.stats.mean);
      }
      parent.value_estimate = v;
      ++parent.node_visits;
    }
  }

  void run(std::uint64_t rollouts) {
    for (std::uint64_t t = 0; t < rollouts; ++t) {
      const SearchPath path = descend();
      const double delta = rollout_from(path.leaf);
      backpropagate(path, delta);
    }
  }

  Action best() const { return best_action(tree_, config_); }

 private:
  bool has_untried(NodeId id) {
    Node<G>& n = tree_.node(id);
    if (!n.untried_ready) {
      for (const Action& a : n.state.legal_actions()) {
        if (!n.edge_index(a)) n.untried.push_back(a);
      }
      n.untried_ready = true;
    }
    return !n.untried.empty();
  }

  Action action_to(NodeId parent, NodeId child) const {
    const Node<G>& p = tree_.node(parent);
    for (std::size_t i = 0; i < p.children.size(); ++i) {
      if (p.children[i] == child) return p.edges[i].action;
    }
    throw PreconditionError("child not linked to parent");
  }

  std::size_t select_at(NodeId id, bool searching_side) {
    const Node<G>& n = tree_.node(id);
    std::vector<double> scores;
    std::vector<double>* sink = trace_ ? &scores : nullptr;
    std::size_t idx;
    std::string label;
    if (searching_side) {
      idx = select_action(config_, n.edges, n.node_visits, rng_, sink);
      label = to_string(config_.kind);
    } else {
      idx = ucb_select(n.edges, n.node_visits, opponent_.cp, Direction::kMinimize, rng_, sink);
      label = "lcb";
    }
    if (trace_) trace_({id, std::move(label), std::move(scores), n.edges[idx].action});
    return idx;
  }

  SearchTree<G> tree_;
  PolicyConfig config_;
  OpponentModel opponent_;
  RandomStream& rng_;
  PlayerId searcher_;
  TraceSink trace_;
};

template <TurnBasedGame G>
struct SearchResult {
  Action best;
  SearchTree<G> tree;
};

// Runs exactly `rollouts` iterations of descend / roll-out / backpropagate.
template <TurnBasedGame G>
SearchResult<G> run_search(const G& root_state, std::uint64_t rollouts,
                           const PolicyConfig& config, const OpponentModel& opponent,
                           RandomStream& rng) {
  if (rollouts < 1) throw PreconditionError("need at least one roll-out");
  Mcts<G> mcts(root_state, config, opponent, rng);
  mcts.run(rollouts);
  return {mcts.best(), std::move(mcts.tree())};
}

}  // namespace aoap
