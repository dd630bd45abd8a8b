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

#ifndef SYMDP_MNFA_H_
#define SYMDP_MNFA_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "symdp/bigint.h"
#include "symdp/core.h"
#include "symdp/rng.h"

namespace symdp {

// State q_{i,e}: i symbols emitted so far, e of them differ from the
// reference word.
struct MnfaState {
  std::size_t emitted = 0;
  std::size_t mismatches = 0;

  bool operator==(const MnfaState&) const = default;
};

// Automaton accepting exactly the words of length n at Hamming distance j
// from a reference word x. From q_{i,e}, emitting x_{i+1} moves to
// q_{i+1,e}; any other symbol moves to q_{i+1,e+1}. Only states that are
// both reachable and co-reachable are kept (e <= i and j - e <= n - i), so
// storage is a diagonal band of O(n * min(j, n - j)) states.
//
// After SynthesizePolicy() each state carries V(q), the exact number of
// accepting paths from q, and the policy mu(q', sigma | q) = V(q') / V(q),
// under which every accepted word is generated with probability 1 / V(q_0).
class Mnfa {
 public:
  static absl::StatusOr<Mnfa> Build(const Word& reference,
                                    std::size_t distance);

  // Backward pass from the accepting state, one layer per iteration,
  // populating path counts and the policy.
  static Mnfa SynthesizePolicy(Mnfa mnfa);

  // Build followed by SynthesizePolicy.
  static absl::StatusOr<Mnfa> BuildWithPolicy(const Word& reference,
                                              std::size_t distance);

  std::size_t length() const { return reference_.size(); }
  std::size_t distance() const { return distance_; }
  std::size_t alphabet_size() const { return reference_.alphabet_size(); }
  const Word& reference() const { return reference_; }
  std::size_t num_states() const { return nodes_.size(); }
  bool has_policy() const { return has_policy_; }

  MnfaState initial() const { return {0, 0}; }
  MnfaState accepting() const { return {length(), distance_}; }
  bool Contains(MnfaState q) const;

  // All states, layer by layer.
  std::vector<MnfaState> States() const;

  // Transition function restricted to the kept states.
  std::optional<MnfaState> Next(MnfaState q, Symbol sigma) const;
  bool Accepts(const Word& word) const;

  // The accessors below require has_policy().
  const BigInt& PathCount(MnfaState q) const;
  // mu(Next(q, sigma), sigma | q); zero when the successor is pruned.
  BigRational TransitionProbability(MnfaState q, Symbol sigma) const;
  // Product of mu along the run of the word; zero if the word is rejected.
  BigRational PathProbability(const Word& word) const;

  // One run of the automaton under the policy. Draw order: one Uniform() per
  // position. [0, keep) emits the reference symbol; the rest of [0, 1) is
  // split evenly over the other symbols in index order.
  Word SampleRun(Rng& rng) const;

  // Graphviz description: states with V, edges with symbol and mu.
  std::string ToDot(const Alphabet* alphabet = nullptr) const;

 private:
  struct Node {
    BigInt paths = 0;
    long double keep = 0.0L;        // mu of the matching edge
    long double substitute = 0.0L;  // mu of each mismatching edge
  };

  Mnfa(Word reference, std::size_t distance);

  std::size_t Lowest(std::size_t emitted) const;
  std::size_t Highest(std::size_t emitted) const;
  std::size_t IndexOf(MnfaState q) const;

  Word reference_;
  std::size_t distance_;
  std::vector<std::size_t> layer_offset_;
  std::vector<Node> nodes_;
  bool has_policy_ = false;
};

}  // namespace symdp

#endif  // SYMDP_MNFA_H_
