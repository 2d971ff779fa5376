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

#include <cstdint>
#include <limits>
#include <string>

#include "aoap/errors.hpp"

namespace aoap {

// Normal prior on an edge value. The uninformative case (prior variance
// tending to infinity) is a distinct state, not a large number.
class Prior {
 public:
  static Prior normal(double mean, double variance) {
    if (!(variance > 0.0) || variance == std::numeric_limits<double>::infinity()) {
      throw PreconditionError("prior variance must be finite and positive");
    }
    return Prior(mean, variance);
  }
  static Prior uninformative() { return Prior(0.0, 0.0); }

  bool is_uninformative() const { return variance_ == 0.0; }
  double mean() const { return mean_; }
  // Only meaningful for an informative prior.
  double variance() const { return variance_; }

  friend bool operator==(const Prior&, const Prior&) = default;

 private:
  Prior(double mean, double variance) : mean_(mean), variance_(variance) {}

  double mean_;
  double variance_;  // 0 encodes "uninformative"
};

inline std::string to_string(const Prior& p) {
  if (p.is_uninformative()) return "uninformative";
  return "N(" + std::to_string(p.mean()) + "," + std::to_string(p.variance()) + ")";
}

// Normalization of the plug-in variance estimate. Population (divide by N)
// is what the streaming update reproduces; sample divides by N - 1.
enum class VarianceNorm : std::uint8_t { kPopulation, kSample };

// Sufficient statistics of the samples collected on one state-action edge.
struct NodeStats {
  std::uint64_t visits = 0;
  double mean = 0.0;
  double m2 = 0.0;  // sum of squared deviations from the running mean
  double prev_mean = 0.0;
  Prior prior = Prior::uninformative();
  double immediate_reward = 0.0;

  double sample_variance(VarianceNorm norm = VarianceNorm::kPopulation) const {
    if (visits == 0) throw InsufficientDataError("edge has no samples");
    if (norm == VarianceNorm::kSample) {
      return visits > 1 ? m2 / static_cast<double>(visits - 1) : 0.0;
    }
    return m2 / static_cast<double>(visits);
  }

  // Streaming update with one new sample.
  //   prev_mean <- mean
  //   mean      <- ((N-1)/N) mean + delta/N
  //   m2        <- m2 + (delta - mean_new)(delta - mean_old)
  // so m2/N follows ((N-1)/N) var + (1/N)(delta - mean_new)(delta - mean_old).
  void record(double delta) {
    ++visits;
    prev_mean = mean;
    const double n = static_cast<double>(visits);
    mean = ((n - 1.0) / n) * mean + delta / n;
    m2 += (delta - mean) * (delta - prev_mean);
  }
};

struct Posterior {
  double mean = 0.0;
  double variance = 0.0;
};

inline NodeStats record_sample(NodeStats stats, double delta) {
  stats.record(delta);
  return stats;
}

inline double guarded_variance(const NodeStats& stats, double epsilon,
                               VarianceNorm norm = VarianceNorm::kPopulation) {
  const double v = stats.sample_variance(norm);
  return v > epsilon ? v : epsilon;
}

namespace detail {

inline double posterior_variance_with(const NodeStats& stats, double s2,
                                      double n) {
  if (stats.prior.is_uninformative()) return s2 / n;
  return 1.0 / (1.0 / stats.prior.variance() + n / s2);
}

}  // namespace detail

// Conjugate-normal posterior of the edge value, with the guarded plug-in
// variance s2 standing in for the known sampling variance.
inline Posterior posterior(const NodeStats& stats, double epsilon,
                           VarianceNorm norm = VarianceNorm::kPopulation) {
  const double s2 = guarded_variance(stats, epsilon, norm);
  const double n = static_cast<double>(stats.visits);
  Posterior p;
  p.variance = detail::posterior_variance_with(stats, s2, n);
  if (stats.prior.is_uninformative()) {
    p.mean = stats.mean;
  } else {
    p.mean = p.variance * (stats.prior.mean() / stats.prior.variance() +
                           n * stats.mean / s2);
  }
  return p;
}

// Posterior variance after one more (hypothetical) sample on this edge.
inline double posterior_variance_plus_one(
    const NodeStats& stats, double epsilon,
    VarianceNorm norm = VarianceNorm::kPopulation) {
  const double s2 = guarded_variance(stats, epsilon, norm);
  return detail::posterior_variance_with(
      stats, s2, static_cast<double>(stats.visits) + 1.0);
}

}  // namespace aoap
