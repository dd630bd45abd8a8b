// Copyright 2026 The symdp Authors
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

#ifndef SYMDP_MECHANISMS_H_
#define SYMDP_MECHANISMS_H_

#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "absl/status/statusor.h"
#include "symdp/core.h"
#include "symdp/mnfa.h"
#include "symdp/rng.h"

namespace symdp {

// Probability law over output distances 0..n.
class DistanceDistribution {
 public:
  // Normalizes log-weights with log-sum-exp. -inf entries get probability 0.
  // At least one entry must be finite.
  static absl::StatusOr<DistanceDistribution> FromLogWeights(
      std::vector<long double> log_weights);

  std::size_t max_distance() const { return probabilities_.size() - 1; }
  long double probability(std::size_t distance) const {
    return probabilities_.at(distance);
  }
  const std::vector<long double>& probabilities() const {
    return probabilities_;
  }
  long double Mean() const;

  // One Uniform() draw, inverse CDF over distances in increasing order.
  std::size_t Sample(Rng& rng) const;

 private:
  explicit DistanceDistribution(std::vector<long double> probabilities)
      : probabilities_(std::move(probabilities)) {}

  std::vector<long double> probabilities_;
};

// p(l) proportional to C(n, l) (m - 1)^l exp(-epsilon l / 2k), l = 0..n.
// With m == 1 only l = 0 is possible and p(0) = 1.
absl::StatusOr<DistanceDistribution> OfflineDistanceDistribution(
    std::size_t n, std::size_t m, double epsilon, int k);

// Whole-word offline mechanism for a free alphabet: draw a distance from
// OfflineDistanceDistribution, then a uniform word at exactly that distance
// via the distance automaton. Automata are built lazily per distance and
// shared; Sample() is safe to call concurrently with distinct Rng streams.
class OfflineMechanism {
 public:
  static absl::StatusOr<OfflineMechanism> Create(const Word& input,
                                                 double epsilon, int k);

  const Word& input() const { return input_; }
  const DistanceDistribution& distance_distribution() const {
    return distances_;
  }
  const Mnfa& AutomatonFor(std::size_t distance) const;

  // Draw order: one Uniform() for the distance, then one per position.
  Word Sample(Rng& rng) const;

 private:
  struct Cache {
    std::mutex mu;
    std::vector<std::unique_ptr<const Mnfa>> automata;
  };

  OfflineMechanism(Word input, DistanceDistribution distances);

  Word input_;
  DistanceDistribution distances_;
  std::shared_ptr<Cache> cache_;
};

// Samples one privatized word with Rng(cfg.seed).
absl::StatusOr<Word> PrivatizeOffline(const Word& input,
                                      const MechanismConfig& cfg);

// Per-symbol randomized response over m symbols: keep the true symbol with
// probability tau, otherwise each other symbol with (1 - tau) / (m - 1).
class OnlinePolicy {
 public:
  // tau = 1 / ((m - 1) exp(-epsilon / k) + 1).
  static absl::StatusOr<OnlinePolicy> Create(std::size_t m, double epsilon,
                                             int k);
  // Arbitrary tau in [0, 1]; used for negative controls.
  static absl::StatusOr<OnlinePolicy> WithTau(std::size_t m, long double tau);

  std::size_t alphabet_size() const { return m_; }
  long double tau() const { return tau_; }
  long double substitution_probability() const { return substitute_; }
  long double Probability(Symbol output, Symbol input) const {
    return output == input ? tau_ : substitute_;
  }

 private:
  OnlinePolicy(std::size_t m, long double tau);

  std::size_t m_;
  long double tau_;
  long double substitute_;
};

// One Uniform() draw: [0, tau) keeps the symbol, the remainder is split
// evenly over the other symbols in index order.
absl::StatusOr<Symbol> PrivatizeOnlineStep(Symbol input,
                                           const OnlinePolicy& policy,
                                           Rng& rng);

// Equivalent to n sequential PrivatizeOnlineStep calls on the same stream.
absl::StatusOr<Word> PrivatizeOnline(const Word& input,
                                     const OnlinePolicy& policy, Rng& rng);
absl::StatusOr<Word> PrivatizeOnline(const Word& input,
                                     const MechanismConfig& cfg);

}  // namespace symdp

#endif  // SYMDP_MECHANISMS_H_
