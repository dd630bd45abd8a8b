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

#include "symdp/oracle.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "absl/strings/str_cat.h"
#include "json.hpp"
#include "symdp/mechanisms.h"

namespace symdp {
namespace {

absl::Status CheckLanguageSize(std::size_t n, std::size_t m) {
  std::size_t size = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (m != 0 && size > kMaxLanguageSize / m) {
      return absl::ResourceExhaustedError(absl::StrCat(
          "|Sigma^n| = ", m, "^", n, " exceeds ", kMaxLanguageSize,
          " words; brute-force distances cost O(n m^n)"));
    }
    size *= m;
  }
  return absl::OkStatus();
}

// Advances `symbols` to the next word in lexicographic order. False after
// the last word.
bool Increment(std::vector<Symbol>& symbols, std::size_t m) {
  for (std::size_t i = symbols.size(); i-- > 0;) {
    if (symbols[i] + 1 < m) {
      ++symbols[i];
      return true;
    }
    symbols[i] = 0;
  }
  return false;
}

absl::Status CheckDescriptor(const MechanismDescriptor& mechanism,
                             const Word& input) {
  const bool chain_kind = mechanism.kind == MechanismKind::kMarkovOffline ||
                          mechanism.kind == MechanismKind::kMarkovOnline;
  if (chain_kind && mechanism.chain == nullptr) {
    return absl::InvalidArgumentError(
        absl::StrCat(MechanismKindName(mechanism.kind), " needs a chain"));
  }
  const std::size_t symbols =
      chain_kind ? mechanism.chain->size() : mechanism.alphabet_size;
  if (input.alphabet_size() != symbols) {
    return absl::InvalidArgumentError(absl::StrCat(
        "input is over ", input.alphabet_size(), " symbols, mechanism over ",
        symbols));
  }
  if (input.size() > kMaxExactLength || symbols > kMaxExactSymbols) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "exact laws are limited to n <= ", kMaxExactLength, " and <= ",
        kMaxExactSymbols, " symbols, got n = ", input.size(), " over ",
        symbols));
  }
  return absl::OkStatus();
}

OutputDistribution WithProbabilities(std::vector<Word> support,
                                     std::vector<long double> probabilities) {
  OutputDistribution out;
  out.support = std::move(support);
  out.probabilities = std::move(probabilities);
  return out;
}

absl::StatusOr<OutputDistribution> ExactOffline(const Word& input,
                                                double epsilon, int k) {
  absl::StatusOr<OfflineMechanism> mechanism =
      OfflineMechanism::Create(input, epsilon, k);
  if (!mechanism.ok()) return mechanism.status();
  absl::StatusOr<std::vector<Word>> words =
      EnumerateWords(input.size(), input.alphabet_size());
  if (!words.ok()) return words.status();
  std::vector<long double> probabilities;
  probabilities.reserve(words->size());
  for (const Word& w : *words) {
    const std::size_t d = *HammingDistance(input, w);
    const long double p_distance =
        mechanism->distance_distribution().probability(d);
    probabilities.push_back(
        p_distance == 0.0L
            ? 0.0L
            : p_distance * ToLongDouble(
                               mechanism->AutomatonFor(d).PathProbability(w)));
  }
  return WithProbabilities(*std::move(words), std::move(probabilities));
}

absl::StatusOr<OutputDistribution> ExactOnline(
    const MechanismDescriptor& mechanism, const Word& input, double epsilon,
    int k) {
  absl::StatusOr<OnlinePolicy> policy =
      mechanism.forced_tau
          ? OnlinePolicy::WithTau(input.alphabet_size(), *mechanism.forced_tau)
          : OnlinePolicy::Create(input.alphabet_size(), epsilon, k);
  if (!policy.ok()) return policy.status();
  absl::StatusOr<std::vector<Word>> words =
      EnumerateWords(input.size(), input.alphabet_size());
  if (!words.ok()) return words.status();
  std::vector<long double> probabilities;
  probabilities.reserve(words->size());
  for (const Word& w : *words) {
    long double p = 1.0L;
    for (std::size_t t = 0; t < w.size(); ++t) {
      p *= policy->Probability(w[t], input[t]);
    }
    probabilities.push_back(p);
  }
  return WithProbabilities(*std::move(words), std::move(probabilities));
}

absl::StatusOr<OutputDistribution> ExactMarkovOffline(
    const MarkovChain& chain, const Word& input, double epsilon, int k) {
  absl::StatusOr<MarkovOfflineMechanism> mechanism =
      MarkovOfflineMechanism::Create(chain, input, epsilon, k);
  if (!mechanism.ok()) return mechanism.status();
  absl::StatusOr<std::vector<Word>> words =
      EnumerateFeasibleWords(chain, input.size());
  if (!words.ok()) return words.status();
  std::vector<long double> probabilities;
  probabilities.reserve(words->size());
  for (const Word& w : *words) {
    const std::size_t d = *HammingDistance(input, w);
    const long double p_distance =
        mechanism->distance_distribution().probability(d);
    probabilities.push_back(
        p_distance == 0.0L
            ? 0.0L
            : p_distance * ToLongDouble(
                               mechanism->AutomatonFor(d).PathProbability(w)));
  }
  return WithProbabilities(*std::move(words), std::move(probabilities));
}

absl::StatusOr<OutputDistribution> ExactMarkovOnline(
    const MechanismDescriptor& mechanism, const Word& input, double epsilon,
    int k) {
  const MarkovChain& chain = *mechanism.chain;
  absl::StatusOr<MarkovOnlinePolicy> policy =
      mechanism.forced_tau
          ? MarkovOnlinePolicy::WithTau(chain, *mechanism.forced_tau)
          : MarkovOnlinePolicy::Create(chain, epsilon, k);
  if (!policy.ok()) return policy.status();
  absl::StatusOr<std::vector<Word>> words =
      EnumerateFeasibleWords(chain, input.size());
  if (!words.ok()) return words.status();
  std::vector<long double> probabilities;
  probabilities.reserve(words->size());
  for (const Word& w : *words) {
    long double p = 1.0L;
    Symbol previous = chain.initial();
    for (std::size_t t = 0; t < w.size(); ++t) {
      p *= policy->Probability(w[t], input[t], previous);
      previous = w[t];
    }
    probabilities.push_back(p);
  }
  return WithProbabilities(*std::move(words), std::move(probabilities));
}

nlohmann::ordered_json WordJson(const Word& word, const Alphabet* alphabet) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (Symbol s : word.symbols()) {
    if (alphabet != nullptr && alphabet->size() == word.alphabet_size()) {
      out.push_back(alphabet->token(s));
    } else {
      out.push_back(s);
    }
  }
  return out;
}

}  // namespace

long double OutputDistribution::ProbabilityOf(const Word& word) const {
  auto it = std::find(support.begin(), support.end(), word);
  if (it == support.end()) return 0.0L;
  return probabilities[static_cast<std::size_t>(it - support.begin())];
}

long double OutputDistribution::Total() const {
  long double total = 0.0L;
  for (long double p : probabilities) total += p;
  return total;
}

absl::StatusOr<std::vector<Word>> EnumerateWords(std::size_t n,
                                                 std::size_t m) {
  if (n == 0 || m == 0) {
    return absl::InvalidArgumentError("need n >= 1 and m >= 1");
  }
  if (absl::Status s = CheckLanguageSize(n, m); !s.ok()) return s;
  std::vector<Word> out;
  std::vector<Symbol> symbols(n, 0);
  do {
    out.push_back(*Word::Create(symbols, m));
  } while (Increment(symbols, m));
  return out;
}

absl::StatusOr<std::vector<Word>> EnumerateFeasibleWords(
    const MarkovChain& chain, std::size_t n) {
  if (n == 0) return absl::InvalidArgumentError("need n >= 1");
  std::vector<Word> out;
  std::vector<Symbol> prefix;
  prefix.reserve(n);
  // Iterative depth-first search; cursor[t] indexes C(prefix[t - 1]).
  std::vector<std::size_t> cursor(n + 1, 0);
  const auto last = [&]() {
    return prefix.empty() ? chain.initial() : prefix.back();
  };
  while (true) {
    const std::size_t depth = prefix.size();
    if (depth == n) {
      if (out.size() == kMaxLanguageSize) {
        return absl::ResourceExhaustedError(absl::StrCat(
            "more than ", kMaxLanguageSize, " feasible words of length ", n));
      }
      out.push_back(*Word::Create(prefix, chain.size()));
      prefix.pop_back();
      continue;
    }
    std::span<const Symbol> next = chain.Successors(last());
    if (cursor[depth] < next.size()) {
      prefix.push_back(next[cursor[depth]++]);
      cursor[depth + 1] = 0;
      continue;
    }
    if (depth == 0) break;
    prefix.pop_back();
  }
  return out;
}

absl::StatusOr<OutputDistribution> ExponentialMechanismDistribution(
    const Word& input, std::span<const Word> language, double epsilon,
    int k) {
  if (absl::Status s = MechanismConfig{epsilon, k, 0}.Validate(); !s.ok()) {
    return s;
  }
  if (language.empty()) {
    return absl::InvalidArgumentError("language is empty");
  }
  if (language.size() > kMaxLanguageSize) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "language of ", language.size(), " words exceeds ", kMaxLanguageSize,
        "; brute-force distances cost O(n m^n)"));
  }
  const long double scale =
      static_cast<long double>(epsilon) / (2.0L * static_cast<long double>(k));
  std::vector<long double> log_weights;
  log_weights.reserve(language.size());
  for (const Word& w : language) {
    absl::StatusOr<std::size_t> d = HammingDistance(input, w);
    if (!d.ok()) return d.status();
    log_weights.push_back(-scale * static_cast<long double>(*d));
  }
  const long double top =
      *std::max_element(log_weights.begin(), log_weights.end());
  long double total = 0.0L;
  for (long double& lw : log_weights) {
    lw = std::exp(lw - top);
    total += lw;
  }
  for (long double& lw : log_weights) lw /= total;
  return WithProbabilities(std::vector<Word>(language.begin(), language.end()),
                           std::move(log_weights));
}

absl::StatusOr<OutputDistribution> ExponentialMechanismDistribution(
    const Word& input, double epsilon, int k) {
  absl::StatusOr<std::vector<Word>> words =
      EnumerateWords(input.size(), input.alphabet_size());
  if (!words.ok()) return words.status();
  return ExponentialMechanismDistribution(input, *words, epsilon, k);
}

absl::StatusOr<OutputDistribution> ExponentialMechanismDistribution(
    const MarkovChain& chain, const Word& input, double epsilon, int k) {
  if (input.alphabet_size() != chain.size()) {
    return absl::InvalidArgumentError("input is not over the chain's states");
  }
  absl::StatusOr<std::vector<Word>> words =
      EnumerateFeasibleWords(chain, input.size());
  if (!words.ok()) return words.status();
  return ExponentialMechanismDistribution(input, *words, epsilon, k);
}

const char* MechanismKindName(MechanismKind kind) {
  switch (kind) {
    case MechanismKind::kOffline:
      return "offline";
    case MechanismKind::kOnline:
      return "online";
    case MechanismKind::kMarkovOffline:
      return "mc-offline";
    case MechanismKind::kMarkovOnline:
      return "mc-online";
  }
  return "unknown";
}

absl::StatusOr<MechanismKind> ParseMechanismKind(std::string_view name) {
  for (MechanismKind kind :
       {MechanismKind::kOffline, MechanismKind::kOnline,
        MechanismKind::kMarkovOffline, MechanismKind::kMarkovOnline}) {
    if (name == MechanismKindName(kind)) return kind;
  }
  return absl::InvalidArgumentError(absl::StrCat(
      "unknown mode '", std::string(name),
      "'; expected offline, online, mc-offline or mc-online"));
}

absl::StatusOr<OutputDistribution> ExactMechanismDistribution(
    const MechanismDescriptor& mechanism, const Word& input, double epsilon,
    int k) {
  if (absl::Status s = CheckDescriptor(mechanism, input); !s.ok()) return s;
  switch (mechanism.kind) {
    case MechanismKind::kOffline:
      return ExactOffline(input, epsilon, k);
    case MechanismKind::kOnline:
      return ExactOnline(mechanism, input, epsilon, k);
    case MechanismKind::kMarkovOffline:
      return ExactMarkovOffline(*mechanism.chain, input, epsilon, k);
    case MechanismKind::kMarkovOnline:
      return ExactMarkovOnline(mechanism, input, epsilon, k);
  }
  return absl::InternalError("unhandled mechanism kind");
}

absl::StatusOr<long double> MaxAbsDifference(const OutputDistribution& p,
                                             const OutputDistribution& q) {
  if (p.support.size() != q.support.size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "supports differ in size: ", p.support.size(), " vs ",
        q.support.size()));
  }
  long double worst = 0.0L;
  for (std::size_t i = 0; i < p.support.size(); ++i) {
    auto it = std::find(q.support.begin(), q.support.end(), p.support[i]);
    if (it == q.support.end()) {
      return absl::InvalidArgumentError("supports hold different words");
    }
    const long double other =
        q.probabilities[static_cast<std::size_t>(it - q.support.begin())];
    worst = std::max(worst, std::abs(p.probabilities[i] - other));
  }
  return worst;
}

bool DpReport::unbounded() const { return std::isinf(max_log_ratio); }

std::string DpReport::ToJson(const Alphabet* alphabet) const {
  nlohmann::ordered_json out;
  out["mechanism"] = std::string(MechanismKindName(kind));
  out["n"] = n;
  out["alphabet_size"] = alphabet_size;
  out["epsilon"] = epsilon;
  out["k"] = k;
  out["pairs_checked"] = pairs_checked;
  if (unbounded()) {
    out["max_log_ratio"] = nullptr;
  } else {
    out["max_log_ratio"] = static_cast<double>(max_log_ratio);
  }
  out["unbounded"] = unbounded();
  out["passed"] = passed;
  if (worst_input_a && worst_input_b && worst_output) {
    out["worst"] = {{"input_a", WordJson(*worst_input_a, alphabet)},
                    {"input_b", WordJson(*worst_input_b, alphabet)},
                    {"output", WordJson(*worst_output, alphabet)}};
  }
  return out.dump();
}

absl::StatusOr<DpReport> VerifyDp(const MechanismDescriptor& mechanism,
                                  std::size_t n, double epsilon, int k,
                                  long double tolerance) {
  const bool chain_kind = mechanism.kind == MechanismKind::kMarkovOffline ||
                          mechanism.kind == MechanismKind::kMarkovOnline;
  if (chain_kind && mechanism.chain == nullptr) {
    return absl::InvalidArgumentError(
        absl::StrCat(MechanismKindName(mechanism.kind), " needs a chain"));
  }
  const std::size_t m =
      chain_kind ? mechanism.chain->size() : mechanism.alphabet_size;
  absl::StatusOr<std::vector<Word>> inputs =
      mechanism.kind == MechanismKind::kMarkovOffline
          ? EnumerateFeasibleWords(*mechanism.chain, n)
          : EnumerateWords(n, m);
  if (!inputs.ok()) return inputs.status();

  std::vector<OutputDistribution> laws;
  laws.reserve(inputs->size());
  for (const Word& input : *inputs) {
    absl::StatusOr<OutputDistribution> law =
        ExactMechanismDistribution(mechanism, input, epsilon, k);
    if (!law.ok()) return law.status();
    laws.push_back(*std::move(law));
  }

  DpReport report;
  report.kind = mechanism.kind;
  report.n = n;
  report.alphabet_size = m;
  report.epsilon = epsilon;
  report.k = k;
  const auto record = [&](long double ratio, std::size_t a, std::size_t b,
                          const Word& output) {
    if (ratio > report.max_log_ratio || !report.worst_output) {
      report.max_log_ratio = ratio;
      report.worst_input_a = (*inputs)[a];
      report.worst_input_b = (*inputs)[b];
      report.worst_output = output;
    }
  };
  const long double infinity = std::numeric_limits<long double>::infinity();
  for (std::size_t a = 0; a < inputs->size(); ++a) {
    for (std::size_t b = a + 1; b < inputs->size(); ++b) {
      const std::size_t d = *HammingDistance((*inputs)[a], (*inputs)[b]);
      if (d == 0 || d > static_cast<std::size_t>(k)) continue;
      ++report.pairs_checked;
      const OutputDistribution& pa = laws[a];
      const OutputDistribution& pb = laws[b];
      for (std::size_t o = 0; o < pa.support.size(); ++o) {
        const long double x = pa.probabilities[o];
        const long double y = pb.probabilities[o];
        if (x == 0.0L && y == 0.0L) continue;
        if (x == 0.0L || y == 0.0L) {
          record(infinity, a, b, pa.support[o]);
          continue;
        }
        record(std::abs(std::log(x) - std::log(y)), a, b, pa.support[o]);
      }
    }
  }
  report.passed =
      report.max_log_ratio <= static_cast<long double>(epsilon) + tolerance;
  return report;
}

}  // namespace symdp
