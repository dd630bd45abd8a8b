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

#ifndef SYMDP_MARKOV_H_
#define SYMDP_MARKOV_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "symdp/bigint.h"
#include "symdp/core.h"
#include "symdp/mechanisms.h"
#include "symdp/rng.h"

namespace symdp {

// Finite Markov chain (S, P, s0). Rows of P are stochastic. The initial state
// is public: words over the chain are the states s_1..s_n that follow it.
class MarkovChain {
 public:
  static absl::StatusOr<MarkovChain> Create(
      Alphabet states, std::vector<std::vector<double>> transitions,
      Symbol initial);

  // {"states": [...], "initial": "...",
  //  "transitions": [{"from": ..., "to": ..., "p": ...}, ...]}
  // Omitted pairs have probability zero.
  static absl::StatusOr<MarkovChain> FromJson(std::string_view json);
  std::string ToJson() const;

  const Alphabet& states() const { return states_; }
  std::size_t size() const { return states_.size(); }
  Symbol initial() const { return initial_; }
  double Probability(Symbol from, Symbol to) const {
    return transitions_[from * size() + to];
  }
  bool CanTransition(Symbol from, Symbol to) const {
    return Probability(from, to) > 0.0;
  }
  // C(s) in increasing index order, and N(s) = |C(s)|.
  std::span<const Symbol> Successors(Symbol s) const { return successors_[s]; }
  std::size_t SuccessorCount(Symbol s) const { return successors_[s].size(); }
  std::size_t MaxSuccessorCount() const;
  std::size_t MinSuccessorCount() const;

  absl::StatusOr<MarkovChain> WithInitial(Symbol initial) const;
  absl::StatusOr<MarkovChain> WithInitial(std::string_view token) const;

  // OK iff initial -> w_1 -> ... -> w_n only uses positive-probability
  // transitions. Otherwise FailedPrecondition naming the first bad step.
  absl::Status CheckFeasible(const Word& word) const;
  bool IsFeasible(const Word& word) const { return CheckFeasible(word).ok(); }

 private:
  MarkovChain(Alphabet states, std::vector<double> transitions,
              Symbol initial);

  Alphabet states_;
  std::vector<double> transitions_;  // row-major |S| x |S|
  std::vector<std::vector<Symbol>> successors_;
  Symbol initial_;
};

// Four states s0..s3 with initial state s0 and uniform rows over
//   C(s0) = {s1, s2, s3}, C(s1) = {s1, s2}, C(s2) = {s0, s3},
//   C(s3) = {s1, s3}.
// The word s1 s2 s3 is feasible; s1 -> s3 is not.
MarkovChain ExampleChain();

// `num_states` states named s0, s1, ...; initial state s0. Each row has a
// random nonempty successor set with random positive weights.
MarkovChain RandomChain(std::size_t num_states, std::uint64_t seed);

enum class CaseMode {
  kPreserve,
  kLower,
  // Lowercase, except tokens that never occur in lowercase and occur
  // capitalized somewhere other than the start of a sentence ("I", names).
  kTruecase,
};

enum class SinkPolicy {
  kSelfLoop,     // a token with no successor transitions to itself
  kWrapToFirst,  // ... or to the first token of the corpus
};

struct TokenizerOptions {
  CaseMode case_mode = CaseMode::kTruecase;
  SinkPolicy sink = SinkPolicy::kSelfLoop;
};

// Splits on whitespace and hyphens/dashes and strips punctuation. Internal
// apostrophes are kept.
std::vector<std::string> Tokenize(std::string_view corpus,
                                  const TokenizerOptions& options);

// First-order chain over tokens: P[v | u] = count(u v) / count(u followed by
// anything). States are in first-occurrence order; the initial state is the
// first token.
absl::StatusOr<MarkovChain> BuildBigram(std::string_view corpus,
                                        const TokenizerOptions& options);

// m_l for l = 0..n: feasible length-n words from the chain's initial state at
// Hamming distance exactly l from the input.
struct FeasibleDistanceCounts {
  std::vector<BigInt> counts;

  BigInt Total() const;
};

absl::StatusOr<FeasibleDistanceCounts> CountFeasibleAtDistance(
    const MarkovChain& chain, const Word& input);

// Product state ((i, e), s): position and mismatch count of the distance
// automaton, plus the last chain state emitted (s0 before any output).
struct PmnfaState {
  std::size_t emitted = 0;
  std::size_t mismatches = 0;
  Symbol chain_state = 0;

  bool operator==(const PmnfaState&) const = default;
};

// Synchronous product of the distance-j automaton for a reference word with
// a Markov chain: a transition emitting s' from (q, s) exists iff the
// automaton moves on s' and P[s' | s] > 0. Accepts exactly the feasible
// words at distance j. Path counts and the uniformizing policy are filled by
// a backward pass from every accepting state (q_{n,j}, s).
class Pmnfa {
 public:
  // Fails if no feasible word lies at the requested distance.
  static absl::StatusOr<Pmnfa> Build(const MarkovChain& chain,
                                     const Word& reference,
                                     std::size_t distance);

  std::size_t length() const { return reference_.size(); }
  std::size_t distance() const { return distance_; }
  PmnfaState initial() const { return {0, 0, initial_}; }
  bool Contains(PmnfaState q) const;
  std::optional<PmnfaState> Next(PmnfaState q, Symbol next_state) const;
  bool Accepts(const Word& word) const;

  const BigInt& PathCount(PmnfaState q) const;
  BigRational TransitionProbability(PmnfaState q, Symbol next_state) const;
  BigRational PathProbability(const Word& word) const;

  // One Uniform() per position, inverse CDF over C(s) in index order.
  Word SampleRun(Rng& rng) const;

 private:
  struct Node {
    BigInt paths = 0;
    long double log_paths = 0.0L;
  };

  Pmnfa(const MarkovChain& chain, Word reference, std::size_t distance);

  std::size_t Lowest(std::size_t emitted) const;
  std::size_t Highest(std::size_t emitted) const;
  bool InBand(std::size_t emitted, std::size_t mismatches) const;
  std::size_t IndexOf(PmnfaState q) const;
  void Synthesize();

  std::vector<std::vector<Symbol>> successors_;
  std::size_t num_states_;
  Symbol initial_;
  Word reference_;
  std::size_t distance_;
  std::vector<std::size_t> layer_offset_;
  std::vector<Node> nodes_;
};

// Offline mechanism restricted to feasible words: draw l with probability
// proportional to m_l exp(-epsilon l / 2k), then a uniform feasible word at
// distance l. The input must itself be feasible.
class MarkovOfflineMechanism {
 public:
  static absl::StatusOr<MarkovOfflineMechanism> Create(
      const MarkovChain& chain, const Word& input, double epsilon, int k);

  const Word& input() const { return input_; }
  const FeasibleDistanceCounts& counts() const { return counts_; }
  const DistanceDistribution& distance_distribution() const {
    return distances_;
  }
  // True when only distance 0 is possible: the output is always the input
  // and the privacy guarantee is vacuous.
  bool degenerate() const;

  // Requires counts()[distance] > 0.
  const Pmnfa& AutomatonFor(std::size_t distance) const;

  // Draw order: one Uniform() for the distance, then one per position.
  Word Sample(Rng& rng) const;

 private:
  struct Cache {
    std::mutex mu;
    std::vector<std::unique_ptr<const Pmnfa>> automata;
  };

  MarkovOfflineMechanism(MarkovChain chain, Word input,
                         FeasibleDistanceCounts counts,
                         DistanceDistribution distances);

  MarkovChain chain_;
  Word input_;
  FeasibleDistanceCounts counts_;
  DistanceDistribution distances_;
  std::shared_ptr<Cache> cache_;
};

absl::StatusOr<Word> PrivatizeMarkovOffline(const MarkovChain& chain,
                                            const Word& input,
                                            const MechanismConfig& cfg);

// mu(s_t^o | s_t, s_{t-1}^o). Only states in C(s_{t-1}^o) get mass. If s_t
// is one of them it gets tau = 1 / ((N - 1) exp(-epsilon / k) + 1) and the
// other N - 1 split the rest evenly; otherwise all N are equiprobable.
class MarkovOnlinePolicy {
 public:
  static absl::StatusOr<MarkovOnlinePolicy> Create(const MarkovChain& chain,
                                                   double epsilon, int k);
  // Same layout with a fixed correct-transition probability; used for
  // negative controls.
  static absl::StatusOr<MarkovOnlinePolicy> WithTau(const MarkovChain& chain,
                                                    long double tau);

  std::size_t num_states() const { return successors_.size(); }

  // beta(s_t, s_{t-1}^o).
  bool Reachable(Symbol input, Symbol previous_output) const;
  long double Tau(Symbol input, Symbol previous_output) const;
  long double Probability(Symbol output, Symbol input,
                          Symbol previous_output) const;

  // C(s_{t-1}^o) and the matching row of probabilities.
  std::span<const Symbol> Candidates(Symbol previous_output) const {
    return successors_[previous_output];
  }
  std::span<const long double> Row(Symbol input, Symbol previous_output) const;

 private:
  MarkovOnlinePolicy(const MarkovChain& chain, double epsilon, int k,
                     std::optional<long double> forced_tau);

  std::vector<std::vector<Symbol>> successors_;
  std::vector<std::vector<char>> reachable_;
  std::vector<std::size_t> row_offset_;
  std::vector<long double> table_;
  long double decay_;  // exp(-epsilon / k)
  std::optional<long double> forced_tau_;
};

// One Uniform() draw over Candidates(previous_output) in index order.
absl::StatusOr<Symbol> PrivatizeMarkovOnlineStep(
    Symbol input, Symbol previous_output, const MarkovOnlinePolicy& policy,
    Rng& rng);

// Runs the step n times starting from previous output `initial_output`.
absl::StatusOr<Word> PrivatizeMarkovOnline(const Word& input,
                                           Symbol initial_output,
                                           const MarkovOnlinePolicy& policy,
                                           Rng& rng);
absl::StatusOr<Word> PrivatizeMarkovOnline(const MarkovChain& chain,
                                           const Word& input,
                                           const MechanismConfig& cfg);

}  // namespace symdp

#endif  // SYMDP_MARKOV_H_
