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

#ifndef SYMDP_ORACLE_H_
#define SYMDP_ORACLE_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "symdp/core.h"
#include "symdp/markov.h"

namespace symdp {

// Largest language the brute-force routines will enumerate.
inline constexpr std::size_t kMaxLanguageSize = 1000000;

// A finite output law. Support words are distinct.
struct OutputDistribution {
  std::vector<Word> support;
  std::vector<long double> probabilities;

  // Zero for words outside the support.
  long double ProbabilityOf(const Word& word) const;
  long double Total() const;
};

// All of Sigma^n in lexicographic order.
absl::StatusOr<std::vector<Word>> EnumerateWords(std::size_t n, std::size_t m);

// Feasible length-n words from the chain's initial state, lexicographic.
absl::StatusOr<std::vector<Word>> EnumerateFeasibleWords(
    const MarkovChain& chain, std::size_t n);

// p(w) proportional to exp(-epsilon d(input, w) / 2k) over `language`,
// utility -d with sensitivity k.
absl::StatusOr<OutputDistribution> ExponentialMechanismDistribution(
    const Word& input, std::span<const Word> language, double epsilon, int k);
// Over all of Sigma^n.
absl::StatusOr<OutputDistribution> ExponentialMechanismDistribution(
    const Word& input, double epsilon, int k);
// Over the feasible words of `chain`.
absl::StatusOr<OutputDistribution> ExponentialMechanismDistribution(
    const MarkovChain& chain, const Word& input, double epsilon, int k);

enum class MechanismKind {
  kOffline,
  kOnline,
  kMarkovOffline,
  kMarkovOnline,
};

// "offline", "online", "mc-offline", "mc-online".
const char* MechanismKindName(MechanismKind kind);
absl::StatusOr<MechanismKind> ParseMechanismKind(std::string_view name);

struct MechanismDescriptor {
  MechanismKind kind = MechanismKind::kOffline;
  // Symbol count for the free-alphabet kinds. Ignored for chain kinds.
  std::size_t alphabet_size = 2;
  // Required for chain kinds; not owned.
  const MarkovChain* chain = nullptr;
  // Online kinds only: overrides the calibrated correct-transition
  // probability (negative controls).
  std::optional<long double> forced_tau;
};

// Largest instance ExactMechanismDistribution accepts.
inline constexpr std::size_t kMaxExactLength = 4;
inline constexpr std::size_t kMaxExactSymbols = 5;

// Output law of a mechanism computed without sampling: the distance law
// times the policy path product for the whole-word kinds, the per-step
// policy product for the online kinds. The support is Sigma^n for free
// kinds and the feasible words for chain kinds.
absl::StatusOr<OutputDistribution> ExactMechanismDistribution(
    const MechanismDescriptor& mechanism, const Word& input, double epsilon,
    int k);

// Largest pointwise |p - q|. The supports must hold the same words.
absl::StatusOr<long double> MaxAbsDifference(const OutputDistribution& p,
                                             const OutputDistribution& q);

struct DpReport {
  MechanismKind kind = MechanismKind::kOffline;
  std::size_t n = 0;
  std::size_t alphabet_size = 0;
  double epsilon = 0.0;
  int k = 1;
  std::size_t pairs_checked = 0;
  // Max over adjacent pairs (1 <= d <= k) and outputs of
  // |log p(o | a) - log p(o | b)|. Infinite when exactly one of the two
  // probabilities is zero.
  long double max_log_ratio = 0.0L;
  std::optional<Word> worst_input_a;
  std::optional<Word> worst_input_b;
  std::optional<Word> worst_output;
  bool passed = true;

  bool unbounded() const;
  // Token names come from `alphabet` when given, else symbol indices.
  std::string ToJson(const Alphabet* alphabet = nullptr) const;
};

// Exhaustive check of word-level epsilon-DP. Inputs range over Sigma^n
// (free kinds and mc-online) or the feasible words (mc-offline, which
// requires feasible inputs). Passes iff max_log_ratio <= epsilon +
// tolerance.
absl::StatusOr<DpReport> VerifyDp(const MechanismDescriptor& mechanism,
                                  std::size_t n, double epsilon, int k,
                                  long double tolerance = 1e-9L);

}  // namespace symdp

#endif  // SYMDP_ORACLE_H_
