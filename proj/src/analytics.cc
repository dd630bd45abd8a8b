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

#include "symdp/analytics.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"
#include "symdp/mechanisms.h"

namespace symdp {
namespace {

absl::StatusOr<Moments> BinomialMoments(std::size_t n, std::size_t m,
                                        double epsilon, int k,
                                        long double exponent_scale) {
  if (absl::Status s = MechanismConfig{epsilon, k, 0}.Validate(); !s.ok()) {
    return s;
  }
  if (n == 0 || m == 0) {
    return absl::InvalidArgumentError("need n >= 1 and m >= 1");
  }
  const long double c =
      static_cast<long double>(m - 1) *
      std::exp(-static_cast<long double>(epsilon) /
               (exponent_scale * static_cast<long double>(k)));
  const long double nn = static_cast<long double>(n);
  Moments out;
  out.expectation = nn - nn / (c + 1.0L);
  out.variance = nn * c / ((c + 1.0L) * (c + 1.0L));
  return out;
}

std::string Cell(const std::optional<double>& value) {
  return value ? absl::StrFormat("%.10g", *value) : std::string();
}

std::string Quote(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace

Moments MomentsOf(std::span<const long double> law) {
  long double mean = 0.0L;
  for (std::size_t d = 0; d < law.size(); ++d) {
    mean += static_cast<long double>(d) * law[d];
  }
  long double variance = 0.0L;
  for (std::size_t d = 0; d < law.size(); ++d) {
    const long double x = static_cast<long double>(d) - mean;
    variance += x * x * law[d];
  }
  return {mean, variance};
}

absl::StatusOr<Moments> OfflineMoments(std::size_t n, std::size_t m,
                                       double epsilon, int k) {
  return BinomialMoments(n, m, epsilon, k, 2.0L);
}

absl::StatusOr<Moments> OnlineMoments(std::size_t n, std::size_t m,
                                      double epsilon, int k) {
  return BinomialMoments(n, m, epsilon, k, 1.0L);
}

absl::StatusOr<MarkovBounds> MarkovOfflineBounds(
    std::size_t n, const MarkovChain& chain, double epsilon, int k,
    const FeasibleDistanceCounts& counts) {
  if (absl::Status s = MechanismConfig{epsilon, k, 0}.Validate(); !s.ok()) {
    return s;
  }
  if (n == 0 || counts.counts.size() != n + 1) {
    return absl::InvalidArgumentError(absl::StrCat(
        "expected ", n + 1, " distance counts, got ", counts.counts.size()));
  }
  const long double decay =
      static_cast<long double>(epsilon) / (2.0L * static_cast<long double>(k));
  long double top = -std::numeric_limits<long double>::infinity();
  std::vector<long double> terms;
  for (std::size_t i = 0; i <= n; ++i) {
    terms.push_back(LogOf(counts.counts[i]) -
                    decay * static_cast<long double>(i));
    top = std::max(top, terms.back());
  }
  if (std::isinf(top)) {
    return absl::FailedPreconditionError("all distance counts are zero");
  }
  long double sum = 0.0L;
  for (long double t : terms) sum += std::exp(t - top);
  const long double log_z = top + std::log(sum);

  const long double b = std::exp(-decay);
  const long double log_n = std::log(static_cast<long double>(n));
  const long double n_minus_1 = static_cast<long double>(n - 1);
  const auto bound = [&](long double a) {
    // n a B (a B + 1)^(n-1) / Z, zero when a == 0.
    if (a <= 0.0L) return 0.0L;
    return std::exp(log_n + std::log(a * b) + n_minus_1 * std::log1p(a * b) -
                    log_z);
  };
  MarkovBounds out;
  out.n_min = chain.MinSuccessorCount();
  out.n_max = chain.MaxSuccessorCount();
  out.lower = bound(static_cast<long double>(out.n_min) - 1.0L);
  out.upper = bound(static_cast<long double>(out.n_max));
  const long double nn = static_cast<long double>(n);
  out.variance_bound = nn * nn / 4.0L;
  return out;
}

absl::StatusOr<Moments> MarkovOfflineMoments(
    const FeasibleDistanceCounts& counts, double epsilon, int k) {
  if (absl::Status s = MechanismConfig{epsilon, k, 0}.Validate(); !s.ok()) {
    return s;
  }
  const long double decay =
      static_cast<long double>(epsilon) / (2.0L * static_cast<long double>(k));
  std::vector<long double> log_weights;
  for (std::size_t i = 0; i < counts.counts.size(); ++i) {
    log_weights.push_back(LogOf(counts.counts[i]) -
                          decay * static_cast<long double>(i));
  }
  absl::StatusOr<DistanceDistribution> law =
      DistanceDistribution::FromLogWeights(std::move(log_weights));
  if (!law.ok()) return law.status();
  return MomentsOf(law->probabilities());
}

long double MarkovOnlineApproximateExpectation(std::size_t n,
                                               std::size_t successors,
                                               double epsilon, int k) {
  const long double nn = static_cast<long double>(n);
  const long double others =
      successors == 0 ? 0.0L : static_cast<long double>(successors - 1);
  const long double decay = std::exp(-static_cast<long double>(epsilon) /
                                     static_cast<long double>(k));
  return nn - nn / (others * decay + 1.0L);
}

absl::StatusOr<std::vector<long double>> MarkovOnlineDistanceLaw(
    const MarkovChain& chain, const Word& input, double epsilon, int k) {
  if (input.alphabet_size() != chain.size()) {
    return absl::InvalidArgumentError("input is not over the chain's states");
  }
  absl::StatusOr<MarkovOnlinePolicy> policy =
      MarkovOnlinePolicy::Create(chain, epsilon, k);
  if (!policy.ok()) return policy.status();
  const std::size_t n = input.size();
  const std::size_t num_states = chain.size();
  // mass[s * (n + 1) + d]: previous output s, distance d so far.
  std::vector<long double> mass(num_states * (n + 1), 0.0L);
  mass[chain.initial() * (n + 1)] = 1.0L;
  for (std::size_t t = 0; t < n; ++t) {
    std::vector<long double> next(mass.size(), 0.0L);
    for (Symbol prev = 0; prev < num_states; ++prev) {
      std::span<const Symbol> candidates = policy->Candidates(prev);
      std::span<const long double> row = policy->Row(input[t], prev);
      for (std::size_t d = 0; d <= t; ++d) {
        const long double here = mass[prev * (n + 1) + d];
        if (here == 0.0L) continue;
        for (std::size_t j = 0; j < candidates.size(); ++j) {
          const std::size_t step = candidates[j] != input[t] ? 1 : 0;
          next[candidates[j] * (n + 1) + d + step] += here * row[j];
        }
      }
    }
    mass = std::move(next);
  }
  std::vector<long double> law(n + 1, 0.0L);
  for (Symbol s = 0; s < num_states; ++s) {
    for (std::size_t d = 0; d <= n; ++d) law[d] += mass[s * (n + 1) + d];
  }
  return law;
}

absl::StatusOr<std::vector<std::vector<long double>>> MarkovOnlineMarginals(
    const MarkovChain& chain, const Word& input, double epsilon, int k) {
  if (input.alphabet_size() != chain.size()) {
    return absl::InvalidArgumentError("input is not over the chain's states");
  }
  absl::StatusOr<MarkovOnlinePolicy> policy =
      MarkovOnlinePolicy::Create(chain, epsilon, k);
  if (!policy.ok()) return policy.status();
  std::vector<long double> previous(chain.size(), 0.0L);
  previous[chain.initial()] = 1.0L;
  std::vector<std::vector<long double>> out;
  out.reserve(input.size());
  for (std::size_t t = 0; t < input.size(); ++t) {
    std::vector<long double> next(chain.size(), 0.0L);
    for (Symbol prev = 0; prev < chain.size(); ++prev) {
      if (previous[prev] == 0.0L) continue;
      std::span<const Symbol> candidates = policy->Candidates(prev);
      std::span<const long double> row = policy->Row(input[t], prev);
      for (std::size_t j = 0; j < candidates.size(); ++j) {
        next[candidates[j]] += previous[prev] * row[j];
      }
    }
    out.push_back(next);
    previous = std::move(next);
  }
  return out;
}

absl::StatusOr<double> OfflineConcentrationBound(std::size_t n, double eta) {
  if (n == 0) return absl::InvalidArgumentError("need n >= 1");
  if (!(eta > 0.0 && eta < 0.5)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "offline concentration bound is stated for eta in (0, 0.5), got ",
        eta));
  }
  const double nn = static_cast<double>(n);
  return std::clamp(2.0 * std::exp(-2.0 * eta * eta / (nn * nn)), 0.0, 1.0);
}

absl::StatusOr<double> OnlineConcentrationBound(double expectation, double eta,
                                                Tail tail) {
  if (!(eta > 0.0 && eta < 1.0)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "online concentration bounds are stated for eta in (0, 1), got ",
        eta));
  }
  if (!(expectation >= 0.0)) {
    return absl::InvalidArgumentError("expectation must be >= 0");
  }
  const double exponent = tail == Tail::kUpper
                              ? -eta * eta * expectation / (2.0 + eta)
                              : -eta * eta * expectation / 2.0;
  return std::clamp(std::exp(exponent), 0.0, 1.0);
}

absl::StatusOr<EmpiricalMoments> ComputeEmpiricalMoments(
    std::span<const double> samples) {
  if (samples.size() < 2) {
    return absl::InvalidArgumentError(absl::StrCat(
        "need at least 2 samples, got ", samples.size()));
  }
  const double count = static_cast<double>(samples.size());
  double sum = 0.0;
  for (double x : samples) sum += x;
  const double mean = sum / count;
  double m2 = 0.0;
  double m4 = 0.0;
  for (double x : samples) {
    const double dx = x - mean;
    m2 += dx * dx;
    m4 += dx * dx * dx * dx;
  }
  EmpiricalMoments out;
  out.count = samples.size();
  out.mean = mean;
  out.variance = m2 / (count - 1.0);
  out.se_mean = std::sqrt(out.variance / count);
  const double mu4 = m4 / count;
  const double var_of_var =
      (mu4 - out.variance * out.variance * (count - 3.0) / (count - 1.0)) /
      count;
  out.se_variance = std::sqrt(std::max(0.0, var_of_var));
  return out;
}

std::string AccuracyCsvHeader() {
  return "mode,initial_state,epsilon,k,n,m_or_S,expectation,variance,lower,"
         "upper,empirical_mean,empirical_se";
}

std::string AccuracyCsvLine(const AccuracyRow& row) {
  return absl::StrJoin(
      {Quote(row.mode), Quote(row.initial_state),
       absl::StrFormat("%.10g", row.epsilon), absl::StrCat(row.k),
       absl::StrCat(row.n), absl::StrCat(row.m_or_s), Cell(row.expectation),
       Cell(row.variance), Cell(row.lower), Cell(row.upper),
       Cell(row.empirical_mean), Cell(row.empirical_se)},
      ",");
}

}  // namespace symdp
