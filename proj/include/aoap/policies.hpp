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
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "aoap/errors.hpp"
#include "aoap/game.hpp"
#include "aoap/node_stats.hpp"
#include "aoap/random.hpp"

namespace aoap {

enum class PolicyKind : std::uint8_t { kAoap, kUct, kOcba, kTtts, kRandom };

inline const char* to_string(PolicyKind k) {
  switch (k) {
    case PolicyKind::kAoap: return "aoap";
    case PolicyKind::kUct: return "uct";
    case PolicyKind::kOcba: return "ocba";
    case PolicyKind::kTtts: return "ttts";
    case PolicyKind::kRandom: return "random";
  }
  return "?";
}

inline std::optional<PolicyKind> parse_policy_kind(std::string_view name) {
  for (PolicyKind k : {PolicyKind::kAoap, PolicyKind::kUct, PolicyKind::kOcba,
                       PolicyKind::kTtts, PolicyKind::kRandom}) {
    if (name == to_string(k)) return k;
  }
  return std::nullopt;
}

enum class Direction : std::uint8_t { kMaximize, kMinimize };

// Algorithmic constants of a tree policy. Defaults are the tic-tac-toe
// precision settings: n0 = 10, epsilon = 1e-5, C_p = 1, prior N(0, 10^2),
// TTTS truncated after 10 redraw rounds.
struct PolicyConfig {
  PolicyKind kind = PolicyKind::kAoap;
  int n0 = 10;
  double epsilon = 1e-5;
  double cp = 1.0;
  Prior prior = Prior::normal(0.0, 100.0);
  int ttts_truncation = 10;
  double aoap_tie_tolerance = 1e-3;  // relative; 0 means exact ties only
  Direction direction = Direction::kMaximize;
  VarianceNorm variance_norm = VarianceNorm::kPopulation;

  void validate() const {
    if (n0 < 2) throw PreconditionError("n0 must be at least 2");
    if (!(epsilon > 0.0)) throw PreconditionError("epsilon must be positive");
    if (!(cp >= 0.0)) throw PreconditionError("C_p must be non-negative");
    if (!(aoap_tie_tolerance >= 0.0)) {
      throw PreconditionError("AOAP tie tolerance must be non-negative");
    }
    if (ttts_truncation < 1) {
      throw PreconditionError("TTTS truncation must be at least 1");
    }
  }
};

// One alternative at a node: the action and the statistics of its edge.
struct Candidate {
  Action action;
  NodeStats stats;
};

using Candidates = std::span<const Candidate>;

// Uniform pick among actions sampled fewer than n0 times; nullopt once every
// action has its n0 warm-up samples.
inline std::optional<std::size_t> warmup_pick(Candidates cands, int n0,
                                              RandomStream& rng) {
  std::size_t under = 0;
  for (const auto& c : cands) under += c.stats.visits < static_cast<std::uint64_t>(n0);
  if (under == 0) return std::nullopt;
  std::size_t k = rng.uniform_index(under);
  for (std::size_t i = 0; i < cands.size(); ++i) {
    if (cands[i].stats.visits < static_cast<std::uint64_t>(n0) && k-- == 0) return i;
  }
  return std::nullopt;  // unreachable
}

inline std::vector<Posterior> posteriors(Candidates cands, double epsilon,
                                         VarianceNorm norm) {
  std::vector<Posterior> out;
  out.reserve(cands.size());
  for (const auto& c : cands) out.push_back(posterior(c.stats, epsilon, norm));
  return out;
}

// Index of the largest posterior mean. Ties go to the larger
// posterior-variance-per-visit, then to the earlier action.
inline std::size_t posterior_best(Candidates cands,
                                  std::span<const Posterior> post) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < cands.size(); ++i) {
    if (post[i].mean > post[best].mean) {
      best = i;
    } else if (post[i].mean == post[best].mean) {
      const double ri = post[i].variance / static_cast<double>(cands[i].stats.visits);
      const double rb = post[best].variance / static_cast<double>(cands[best].stats.visits);
      if (ri > rb) best = i;
    }
  }
  return best;
}

// AOAP value-function approximations, one per candidate.
//
// With b the current posterior best, mu/var the posterior mean/variance and
// var+ the posterior variance after one more sample:
//   score(b) = min_{a != b} (mu_b - mu_a)^2 / (var+_b + var_a)
//   score(a) = min{ (mu_b - mu_a)^2 / (var_b + var+_a),
//                   min_{c != a, b} (mu_b - mu_c)^2 / (var_b + var_c) }
// The inner minimum is taken from the two smallest pairwise terms, so the
// whole vector costs O(k).
inline std::vector<double> aoap_scores(
    Candidates cands, double epsilon,
    VarianceNorm norm = VarianceNorm::kPopulation) {
  if (cands.size() < 2) {
    throw PreconditionError("AOAP scores need at least two candidates");
  }
  const auto post = posteriors(cands, epsilon, norm);
  const std::size_t b = posterior_best(cands, post);
  const std::size_t k = cands.size();
  constexpr double kInf = std::numeric_limits<double>::infinity();

  double min1 = kInf;
  double min2 = kInf;
  std::size_t argmin1 = k;
  std::vector<double> var_plus(k);
  std::vector<double> gap2(k);
  for (std::size_t i = 0; i < k; ++i) {
    var_plus[i] = posterior_variance_plus_one(cands[i].stats, epsilon, norm);
    const double gap = post[b].mean - post[i].mean;
    gap2[i] = gap * gap;
    if (i == b) continue;
    const double term = gap2[i] / (post[b].variance + post[i].variance);
    if (term < min1) {
      min2 = min1;
      min1 = term;
      argmin1 = i;
    } else if (term < min2) {
      min2 = term;
    }
  }

  std::vector<double> scores(k, kInf);
  for (std::size_t i = 0; i < k; ++i) {
    if (i == b) continue;
    scores[b] = std::min(scores[b], gap2[i] / (var_plus[b] + post[i].variance));
    const double own = gap2[i] / (post[b].variance + var_plus[i]);
    scores[i] = std::min(own, i == argmin1 ? min2 : min1);
  }
  return scores;
}

// argmax of the AOAP scores; ties by largest posterior variance per visit,
// then uniformly at random.
//
// Scores within a relative `tie_tolerance` of the maximum count as tied.
// With discrete rewards two weak actions often carry identical statistics;
// each then caps the other's score at the same pairwise minimum, and the
// current best wins every comparison by a margin that shrinks like 1/N^2.
// Without a tolerance those actions are never sampled again.
inline std::size_t aoap_select(Candidates cands, double epsilon,
                               RandomStream& rng,
                               VarianceNorm norm = VarianceNorm::kPopulation,
                               double tie_tolerance = 1e-3,
                               std::vector<double>* scores_out = nullptr) {
  if (cands.empty()) throw PreconditionError("no candidates");
  if (cands.size() == 1) return 0;
  auto scores = aoap_scores(cands, epsilon, norm);
  double top = scores[0];
  for (double s : scores) top = std::max(top, s);
  const double cutoff = top - tie_tolerance * std::abs(top);
  std::vector<std::size_t> tied;
  double best_ratio = -1.0;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    if (scores[i] < cutoff) continue;
    const double ratio = posterior(cands[i].stats, epsilon, norm).variance /
                         static_cast<double>(cands[i].stats.visits);
    if (ratio > best_ratio) {
      best_ratio = ratio;
      tied.clear();
    }
    if (ratio == best_ratio) tied.push_back(i);
  }
  if (scores_out) *scores_out = std::move(scores);
  return tied.size() == 1 ? tied[0] : tied[rng.uniform_index(tied.size())];
}

// Q_bar +/- C_p sqrt(2 ln(N_parent) / N_child); the upper bound when
// maximizing, the lower bound when minimizing.
inline std::vector<double> ucb_scores(Candidates cands,
                                      std::uint64_t parent_visits, double cp,
                                      Direction direction) {
  std::vector<double> scores;
  scores.reserve(cands.size());
  const double log_parent = std::log(static_cast<double>(parent_visits));
  for (const auto& c : cands) {
    if (c.stats.visits == 0) {
      throw PreconditionError("UCB needs every child visited at least once");
    }
    const double bonus =
        cp * std::sqrt(2.0 * log_parent / static_cast<double>(c.stats.visits));
    scores.push_back(direction == Direction::kMaximize ? c.stats.mean + bonus
                                                       : c.stats.mean - bonus);
  }
  return scores;
}

inline std::size_t ucb_select(Candidates cands, std::uint64_t parent_visits,
                              double cp, Direction direction, RandomStream& rng,
                              std::vector<double>* scores_out = nullptr) {
  if (cands.empty()) throw PreconditionError("no candidates");
  if (cands.size() == 1) return 0;
  auto scores = ucb_scores(cands, parent_visits, cp, direction);
  const bool maximize = direction == Direction::kMaximize;
  double target = scores[0];
  for (double s : scores) target = maximize ? std::max(target, s) : std::min(target, s);
  std::vector<std::size_t> tied;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (scores[i] == target) tied.push_back(i);
  }
  if (scores_out) *scores_out = std::move(scores);
  return tied.size() == 1 ? tied[0] : tied[rng.uniform_index(tied.size())];
}

struct OcbaAllocation {
  std::size_t best = 0;
  std::vector<double> allocation;  // normalized to total visits + 1
  bool zero_gap_guarded = false;   // some gap was replaced by sqrt(epsilon)
};

// OCBA pseudo-allocations from sample means and guarded standard deviations:
//   N_a / N_c = ((sigma_a / delta_a) / (sigma_c / delta_c))^2   (a, c non-best)
//   N_best    = sigma_best * sqrt(sum_{a != best} N_a^2 / sigma_a^2)
inline OcbaAllocation ocba_allocation(
    Candidates cands, double epsilon,
    VarianceNorm norm = VarianceNorm::kPopulation) {
  if (cands.size() < 2) {
    throw PreconditionError("OCBA allocation needs at least two candidates");
  }
  const std::size_t k = cands.size();
  OcbaAllocation out;
  for (std::size_t i = 1; i < k; ++i) {
    if (cands[i].stats.mean > cands[out.best].stats.mean) out.best = i;
  }
  const std::size_t b = out.best;
  std::vector<double> sigma(k);
  std::vector<double> ratio(k);  // sigma / delta for non-best
  std::uint64_t total_visits = 0;
  for (std::size_t i = 0; i < k; ++i) {
    total_visits += cands[i].stats.visits;
    sigma[i] = std::sqrt(guarded_variance(cands[i].stats, epsilon, norm));
    if (i == b) continue;
    double delta = cands[b].stats.mean - cands[i].stats.mean;
    if (!(delta > 0.0)) {
      delta = std::sqrt(epsilon);
      out.zero_gap_guarded = true;
    }
    ratio[i] = sigma[i] / delta;
  }
  const std::size_t ref = b == 0 ? 1 : 0;
  std::vector<double> raw(k);
  double best_sum = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    if (i == b) continue;
    const double r = ratio[i] / ratio[ref];
    raw[i] = r * r;
    best_sum += raw[i] * raw[i] / (sigma[i] * sigma[i]);
  }
  raw[b] = sigma[b] * std::sqrt(best_sum);
  double raw_total = 0.0;
  for (double r : raw) raw_total += r;
  const double scale = static_cast<double>(total_visits + 1) / raw_total;
  out.allocation.resize(k);
  for (std::size_t i = 0; i < k; ++i) out.allocation[i] = raw[i] * scale;
  return out;
}

// Most-starving rule: argmax of (allocation - visits), earliest on ties.
inline std::size_t ocba_select(Candidates cands, double epsilon,
                               VarianceNorm norm = VarianceNorm::kPopulation,
                               std::vector<double>* scores_out = nullptr) {
  if (cands.empty()) throw PreconditionError("no candidates");
  if (cands.size() == 1) return 0;
  const auto alloc = ocba_allocation(cands, epsilon, norm);
  std::vector<double> deficit(cands.size());
  std::size_t pick = 0;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    deficit[i] = alloc.allocation[i] - static_cast<double>(cands[i].stats.visits);
    if (deficit[i] > deficit[pick]) pick = i;
  }
  if (scores_out) *scores_out = std::move(deficit);
  return pick;
}

namespace detail {

inline std::size_t argmax(const std::vector<double>& v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] > v[best]) best = i;
  }
  return best;
}

inline void draw_posteriors(std::span<const Posterior> post, RandomStream& rng,
                            std::vector<double>& out) {
  out.resize(post.size());
  for (std::size_t i = 0; i < post.size(); ++i) {
    out[i] = rng.normal(post[i].mean, std::sqrt(post[i].variance));
  }
}

}  // namespace detail

// Top-two Thompson sampling. The leader is the argmax of one posterior draw;
// the challenger is the argmax of a fresh draw that disagrees with it, tried
// for at most `truncation` rounds before falling back to the runner-up of the
// first draw. Leader and challenger are returned with probability 1/2 each.
inline std::size_t ttts_select(Candidates cands, double epsilon,
                               int truncation, RandomStream& rng,
                               VarianceNorm norm = VarianceNorm::kPopulation,
                               std::vector<double>* scores_out = nullptr) {
  if (cands.empty()) throw PreconditionError("no candidates");
  if (cands.size() == 1) return 0;
  const auto post = posteriors(cands, epsilon, norm);
  std::vector<double> first;
  detail::draw_posteriors(post, rng, first);
  const std::size_t leader = detail::argmax(first);
  std::optional<std::size_t> challenger;
  std::vector<double> redraw;
  for (int round = 0; round < truncation && !challenger; ++round) {
    detail::draw_posteriors(post, rng, redraw);
    const std::size_t a = detail::argmax(redraw);
    if (a != leader) challenger = a;
  }
  if (!challenger) {
    std::size_t runner_up = leader == 0 ? 1 : 0;
    for (std::size_t i = 0; i < first.size(); ++i) {
      if (i != leader && first[i] > first[runner_up]) runner_up = i;
    }
    challenger = runner_up;
  }
  const bool take_leader = rng.coin();
  if (scores_out) *scores_out = std::move(first);
  return take_leader ? leader : *challenger;
}

inline std::size_t random_select(Candidates cands, RandomStream& rng) {
  if (cands.empty()) throw PreconditionError("no candidates");
  return rng.uniform_index(cands.size());
}

// Dispatches to the selector configured in `config`. `scores_out`, when
// given, receives the per-candidate vector the rule maximized (AOAP scores,
// confidence bounds, OCBA deficits or the first TTTS draw).
inline std::size_t select_action(const PolicyConfig& config, Candidates cands,
                                 std::uint64_t parent_visits, RandomStream& rng,
                                 std::vector<double>* scores_out = nullptr) {
  switch (config.kind) {
    case PolicyKind::kAoap:
      return aoap_select(cands, config.epsilon, rng, config.variance_norm,
                         config.aoap_tie_tolerance, scores_out);
    case PolicyKind::kUct:
      return ucb_select(cands, parent_visits, config.cp, config.direction, rng, scores_out);
    case PolicyKind::kOcba:
      return ocba_select(cands, config.epsilon, config.variance_norm, scores_out);
    case PolicyKind::kTtts:
      return ttts_select(cands, config.epsilon, config.ttts_truncation, rng,
                         config.variance_norm, scores_out);
    case PolicyKind::kRandom:
      if (scores_out) scores_out->clear();
      return random_select(cands, rng);
  }
  throw PreconditionError("unknown policy kind");
}

}  // namespace aoap
