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

#ifndef SYMDP_ANALYTICS_H_
#define SYMDP_ANALYTICS_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "symdp/core.h"
#include "symdp/markov.h"

namespace symdp {

struct Moments {
  long double expectation = 0.0L;
  long double variance = 0.0L;
};

// Moments of a law over distances 0..n.
Moments MomentsOf(std::span<const long double> law);

// Offline free-alphabet mechanism, with c = (m - 1) exp(-epsilon / 2k):
// E = n - n / (c + 1), Var = n c / (c + 1)^2.
absl::StatusOr<Moments> OfflineMoments(std::size_t n, std::size_t m,
                                       double epsilon, int k);

// Online free-alphabet mechanism: same forms with exp(-epsilon / k).
absl::StatusOr<Moments> OnlineMoments(std::size_t n, std::size_t m,
                                      double epsilon, int k);

// Bracket for E[d] under the Markov offline mechanism. With
// B = exp(-epsilon / 2k) and Z = sum_i m_i B^i:
//   lower = n (Nmin - 1) B [(Nmin - 1) B + 1]^(n-1) / Z
//   upper = n Nmax B [Nmax B + 1]^(n-1) / Z
// and Var[d] <= n^2 / 4. Nmin and Nmax range over all states.
struct MarkovBounds {
  long double lower = 0.0L;
  long double upper = 0.0L;
  long double variance_bound = 0.0L;
  std::size_t n_min = 0;
  std::size_t n_max = 0;
};

absl::StatusOr<MarkovBounds> MarkovOfflineBounds(
    std::size_t n, const MarkovChain& chain, double epsilon, int k,
    const FeasibleDistanceCounts& counts);

// Exact moments of the Markov offline distance law.
absl::StatusOr<Moments> MarkovOfflineMoments(
    const FeasibleDistanceCounts& counts, double epsilon, int k);

// Online Markov mechanism: E[d] with N(prev) replaced by a constant N, i.e.
// n - n / ((N - 1) exp(-epsilon / k) + 1). Evaluated at Nmin and Nmax this
// gives a heuristic bracket; it ignores steps where the input is
// unreachable from the previous output.
long double MarkovOnlineApproximateExpectation(std::size_t n,
                                               std::size_t successors,
                                               double epsilon, int k);

// Exact law of d(input, output) under the online Markov mechanism, by a
// forward pass over (previous output, distance so far).
absl::StatusOr<std::vector<long double>> MarkovOnlineDistanceLaw(
    const MarkovChain& chain, const Word& input, double epsilon, int k);

// marginals[t][s] = P[s_{t+1}^o = s] under the online Markov mechanism,
// from the chain's initial state.
absl::StatusOr<std::vector<std::vector<long double>>> MarkovOnlineMarginals(
    const MarkovChain& chain, const Word& input, double epsilon, int k);

// P[|d - E| > eta] <= 2 exp(-2 eta^2 / n^2), clamped to [0, 1]. The bound
// is stated for eta in (0, 0.5); other values are rejected.
absl::StatusOr<double> OfflineConcentrationBound(std::size_t n, double eta);

enum class Tail { kUpper, kLower };

// Chernoff forms for eta in (0, 1), clamped to [0, 1]:
//   P[d > (1 + eta) E] <= exp(-eta^2 E / (2 + eta))
//   P[d < (1 - eta) E] <= exp(-eta^2 E / 2)
absl::StatusOr<double> OnlineConcentrationBound(double expectation, double eta,
                                                Tail tail);

struct EmpiricalMoments {
  std::size_t count = 0;
  double mean = 0.0;
  double variance = 0.0;  // unbiased
  double se_mean = 0.0;
  // Large-sample standard error of the sample variance from the fourth
  // central moment: sqrt((mu4 - sigma^4 (N - 3) / (N - 1)) / N).
  double se_variance = 0.0;
};

// Requires at least two samples.
absl::StatusOr<EmpiricalMoments> ComputeEmpiricalMoments(
    std::span<const double> samples);

// One experiment row. Columns without a value are written empty.
struct AccuracyRow {
  std::string mode;
  std::string initial_state;
  double epsilon = 0.0;
  int k = 1;
  std::size_t n = 0;
  std::size_t m_or_s = 0;
  std::optional<double> expectation;
  std::optional<double> variance;
  std::optional<double> lower;
  std::optional<double> upper;
  std::optional<double> empirical_mean;
  std::optional<double> empirical_se;
};

std::string AccuracyCsvHeader();
std::string AccuracyCsvLine(const AccuracyRow& row);

}  // namespace symdp

#endif  // SYMDP_ANALYTICS_H_
