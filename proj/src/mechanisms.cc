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

#include "symdp/mechanisms.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "absl/strings/str_cat.h"

namespace symdp {
namespace {

long double LogBinomial(std::size_t n, std::size_t r) {
  return std::lgamma(static_cast<long double>(n) + 1.0L) -
         std::lgamma(static_cast<long double>(r) + 1.0L) -
         std::lgamma(static_cast<long double>(n - r) + 1.0L);
}

absl::Status CheckPrivacyParameters(double epsilon, int k) {
  return MechanismConfig{epsilon, k, 0}.Validate();
}

}  // namespace

absl::StatusOr<DistanceDistribution> DistanceDistribution::FromLogWeights(
    std::vector<long double> log_weights) {
  if (log_weights.empty()) {
    return absl::InvalidArgumentError("no distances to weight");
  }
  long double top = -std::numeric_limits<long double>::infinity();
  for (long double w : log_weights) {
    if (std::isnan(w)) return absl::InvalidArgumentError("NaN log-weight");
    top = std::max(top, w);
  }
  if (std::isinf(top)) {
    return absl::FailedPreconditionError("every distance has zero weight");
  }
  long double total = 0.0L;
  for (long double w : log_weights) total += std::exp(w - top);
  std::vector<long double> probabilities;
  probabilities.reserve(log_weights.size());
  for (long double w : log_weights) {
    probabilities.push_back(std::exp(w - top) / total);
  }
  return DistanceDistribution(std::move(probabilities));
}

long double DistanceDistribution::Mean() const {
  long double mean = 0.0L;
  for (std::size_t l = 0; l < probabilities_.size(); ++l) {
    mean += static_cast<long double>(l) * probabilities_[l];
  }
  return mean;
}

std::size_t DistanceDistribution::Sample(Rng& rng) const {
  return SampleIndex(probabilities_, rng.Uniform());
}

absl::StatusOr<DistanceDistribution> OfflineDistanceDistribution(
    std::size_t n, std::size_t m, double epsilon, int k) {
  if (n < 1) return absl::InvalidArgumentError("n must be >= 1");
  if (m < 1) return absl::InvalidArgumentError("m must be >= 1");
  if (absl::Status s = CheckPrivacyParameters(epsilon, k); !s.ok()) return s;
  const long double decay =
      static_cast<long double>(epsilon) / (2.0L * static_cast<long double>(k));
  std::vector<long double> log_weights(n + 1);
  for (std::size_t l = 0; l <= n; ++l) {
    if (m == 1) {
      log_weights[l] =
          l == 0 ? 0.0L : -std::numeric_limits<long double>::infinity();
      continue;
    }
    log_weights[l] = LogBinomial(n, l) +
                     static_cast<long double>(l) *
                         std::log(static_cast<long double>(m - 1)) -
                     decay * static_cast<long double>(l);
  }
  return DistanceDistribution::FromLogWeights(std::move(log_weights));
}

OfflineMechanism::OfflineMechanism(Word input, DistanceDistribution distances)
    : input_(std::move(input)),
      distances_(std::move(distances)),
      cache_(std::make_shared<Cache>()) {
  cache_->automata.resize(input_.size() + 1);
}

absl::StatusOr<OfflineMechanism> OfflineMechanism::Create(const Word& input,
                                                          double epsilon,
                                                          int k) {
  absl::StatusOr<DistanceDistribution> distances =
      OfflineDistanceDistribution(input.size(), input.alphabet_size(),
                                  epsilon, k);
  if (!distances.ok()) return distances.status();
  return OfflineMechanism(input, *std::move(distances));
}

const Mnfa& OfflineMechanism::AutomatonFor(std::size_t distance) const {
  std::lock_guard<std::mutex> lock(cache_->mu);
  std::unique_ptr<const Mnfa>& slot = cache_->automata.at(distance);
  if (!slot) {
    // Distances with positive probability always admit an automaton.
    slot = std::make_unique<const Mnfa>(
        *Mnfa::BuildWithPolicy(input_, distance));
  }
  return *slot;
}

Word OfflineMechanism::Sample(Rng& rng) const {
  const std::size_t distance = distances_.Sample(rng);
  return AutomatonFor(distance).SampleRun(rng);
}

absl::StatusOr<Word> PrivatizeOffline(const Word& input,
                                      const MechanismConfig& cfg) {
  if (absl::Status s = cfg.Validate(); !s.ok()) return s;
  absl::StatusOr<OfflineMechanism> mechanism =
      OfflineMechanism::Create(input, cfg.epsilon, cfg.k);
  if (!mechanism.ok()) return mechanism.status();
  Rng rng(cfg.seed);
  return mechanism->Sample(rng);
}

OnlinePolicy::OnlinePolicy(std::size_t m, long double tau)
    : m_(m),
      tau_(tau),
      substitute_(m > 1 ? (1.0L - tau) / static_cast<long double>(m - 1)
                        : 0.0L) {}

absl::StatusOr<OnlinePolicy> OnlinePolicy::Create(std::size_t m,
                                                  double epsilon, int k) {
  if (m < 1) return absl::InvalidArgumentError("online policy needs m >= 1");
  if (absl::Status s = CheckPrivacyParameters(epsilon, k); !s.ok()) return s;
  const long double decay = std::exp(-static_cast<long double>(epsilon) /
                                     static_cast<long double>(k));
  const long double tau =
      1.0L / (static_cast<long double>(m - 1) * decay + 1.0L);
  return OnlinePolicy(m, tau);
}

absl::StatusOr<OnlinePolicy> OnlinePolicy::WithTau(std::size_t m,
                                                   long double tau) {
  if (m < 1) return absl::InvalidArgumentError("online policy needs m >= 1");
  if (!(tau >= 0.0L && tau <= 1.0L)) {
    return absl::InvalidArgumentError("tau must lie in [0, 1]");
  }
  if (m == 1 && tau != 1.0L) {
    return absl::InvalidArgumentError("a single-symbol policy needs tau = 1");
  }
  return OnlinePolicy(m, tau);
}

absl::StatusOr<Symbol> PrivatizeOnlineStep(Symbol input,
                                           const OnlinePolicy& policy,
                                           Rng& rng) {
  const std::size_t m = policy.alphabet_size();
  if (input >= m) {
    return absl::InvalidArgumentError(absl::StrCat(
        "symbol ", input, " is outside an alphabet of size ", m));
  }
  const double u = rng.Uniform();
  const long double sub = policy.substitution_probability();
  if (sub <= 0.0L || u < policy.tau()) return input;
  const long double slot = (static_cast<long double>(u) - policy.tau()) / sub;
  std::size_t rank = slot <= 0.0L ? 0 : static_cast<std::size_t>(slot);
  rank = std::min(rank, m - 2);
  Symbol out = static_cast<Symbol>(rank);
  if (out >= input) ++out;
  return out;
}

absl::StatusOr<Word> PrivatizeOnline(const Word& input,
                                     const OnlinePolicy& policy, Rng& rng) {
  if (input.alphabet_size() != policy.alphabet_size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "policy built for ", policy.alphabet_size(),
        " symbols, word is over ", input.alphabet_size()));
  }
  std::vector<Symbol> out;
  out.reserve(input.size());
  for (Symbol s : input.symbols()) {
    absl::StatusOr<Symbol> o = PrivatizeOnlineStep(s, policy, rng);
    if (!o.ok()) return o.status();
    out.push_back(*o);
  }
  return Word::Create(std::move(out), input.alphabet_size());
}

absl::StatusOr<Word> PrivatizeOnline(const Word& input,
                                     const MechanismConfig& cfg) {
  if (absl::Status s = cfg.Validate(); !s.ok()) return s;
  absl::StatusOr<OnlinePolicy> policy =
      OnlinePolicy::Create(input.alphabet_size(), cfg.epsilon, cfg.k);
  if (!policy.ok()) return policy.status();
  Rng rng(cfg.seed);
  return PrivatizeOnline(input, *policy, rng);
}

}  // namespace symdp
