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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any selected criterion fails.
//
//   acceptance_test [--criterion N] [--corpus PATH]
//
// The bigram criteria (5 second half, 6, 7) need the source text of the
// children's book the bigram is built from. It is looked up at --corpus,
// then at $SYMDP_CORPUS. Without it those criteria run on the bundled
// stand-in corpus for diagnostics and report FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "symdp/analytics.h"
#include "symdp/bigint.h"
#include "symdp/core.h"
#include "symdp/markov.h"
#include "symdp/mechanisms.h"
#include "symdp/mnfa.h"
#include "symdp/oracle.h"
#include "symdp/rng.h"
#include "test_util.h"

namespace symdp {
namespace {

using testing::AllWords;
using testing::Distance;
using testing::Symbols;
using testing::ToSymbols;
using testing::ToWord;

// Pinned tolerances, sample sizes and seeds.
constexpr long double kLawTolerance = 1e-9L;
constexpr long double kDpSlack = 1e-9L;
constexpr long double kRatioAgreement = 1e-9L;
constexpr double kSigmas = 3.0;
constexpr double kMarginalTolerance = 1e-3;
constexpr double kReportedMarginal = 0.993;
constexpr double kC1Seconds = 10.0;
constexpr double kC2Seconds = 30.0;
constexpr double kC3Seconds = 60.0;
constexpr std::size_t kMomentSamples = 100000;
constexpr std::size_t kMarkovSamples = 10000;
constexpr std::size_t kCurveSamples = 1000;
constexpr std::size_t kTailSamples = 100000;
constexpr std::size_t kExpectedStates = 50;
constexpr double kAnywhereMaxError = 1.0;
constexpr double kGreenMinError = 6.0;
constexpr std::uint64_t kSeedC4 = 4004;
constexpr std::uint64_t kSeedC5 = 5005;
constexpr std::uint64_t kSeedC6 = 6006;
constexpr std::uint64_t kSeedC7 = 7007;
constexpr std::uint64_t kSeedC10 = 10010;
constexpr std::uint64_t kRandomChainSeed = 7;
const std::vector<double> kOracleEpsilons = {0.1, 1.0, 5.0};
const std::vector<double> kCurveEpsilons = {0.01, 0.1, 1.0, 5.0, 10.0};

struct Outcome {
  bool passed = true;
  std::string detail;

  void Fail(const std::string& why) {
    if (passed) detail = why;
    passed = false;
  }
};

double Seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

std::string Show(const Symbols& w) {
  std::string out;
  for (std::uint32_t s : w) absl::StrAppend(&out, out.empty() ? "" : " ", s);
  return out;
}

// Sample mean and unbiased variance with their standard errors.
struct Stats {
  double mean = 0.0;
  double variance = 0.0;
  double se_mean = 0.0;
  double se_variance = 0.0;
};

Stats Summarize(const std::vector<double>& xs) {
  const double n = static_cast<double>(xs.size());
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= n;
  double m2 = 0.0;
  double m4 = 0.0;
  for (double x : xs) {
    const double d2 = (x - mean) * (x - mean);
    m2 += d2;
    m4 += d2 * d2;
  }
  Stats s;
  s.mean = mean;
  s.variance = m2 / (n - 1.0);
  s.se_mean = std::sqrt(s.variance / n);
  const double sigma2 = m2 / n;
  s.se_variance = std::sqrt(
      std::max(0.0, (m4 / n - sigma2 * sigma2 * (n - 3.0) / (n - 1.0)) / n));
  return s;
}

Symbols ArangeInput(std::size_t n, std::size_t m) {
  Symbols w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = static_cast<std::uint32_t>(i % m);
  return w;
}

// Pointwise comparison of a library law against a test-side law on the
// same language.
long double LawGap(const OutputDistribution& library,
                   const std::map<Symbols, long double>& reference,
                   bool& same_support) {
  same_support = library.support.size() == reference.size();
  long double gap = 0.0L;
  for (std::size_t i = 0; i < library.support.size(); ++i) {
    auto it = reference.find(ToSymbols(library.support[i]));
    if (it == reference.end()) {
      same_support = false;
      continue;
    }
    gap = std::max(gap, std::fabs(library.probabilities[i] - it->second));
  }
  return gap;
}

// ---- 1 ----

Outcome Criterion1() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  long double worst = 0.0L;
  std::size_t laws = 0;
  for (std::size_t m = 1; m <= 3; ++m) {
    for (std::size_t n = 1; n <= 3; ++n) {
      const std::vector<Symbols> language = AllWords(n, m);
      for (int k : {1, 2}) {
        for (double e : kOracleEpsilons) {
          for (const Symbols& input : language) {
            absl::StatusOr<OutputDistribution> law = ExactMechanismDistribution(
                {MechanismKind::kOffline, m, nullptr, std::nullopt},
                ToWord(input, m), e, k);
            if (!law.ok()) {
              o.Fail(std::string(law.status().message()));
              continue;
            }
            bool same = false;
            const long double gap = LawGap(
                *law, testing::Exponential(input, language, e, k), same);
            ++laws;
            worst = std::max(worst, gap);
            if (!same) o.Fail(absl::StrCat("support mismatch n=", n, " m=", m));
            if (gap > kLawTolerance) {
              o.Fail(absl::StrFormat("gap %.3Lg at n=%d m=%d k=%d eps=%g "
                                     "input [%s]",
                                     gap, n, m, k, e, Show(input)));
            }
          }
        }
      }
    }
  }
  const double secs = Seconds(start);
  if (secs >= kC1Seconds) o.Fail(absl::StrFormat("runtime %.2f s", secs));
  if (o.passed) {
    o.detail = absl::StrFormat("%d laws, max |gap| %.3Lg, %.2f s", laws,
                               worst, secs);
  }
  return o;
}

// ---- 2 ----

Outcome Criterion2() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  const MarkovChain example = ExampleChain();
  const MarkovChain random = RandomChain(4, kRandomChainSeed);
  long double worst = 0.0L;
  std::size_t laws = 0;
  for (const auto& [name, chain] :
       {std::pair<const char*, const MarkovChain*>{"example", &example},
        {"random", &random}}) {
    for (std::size_t n = 1; n <= 3; ++n) {
      const std::vector<Symbols> language = testing::FeasibleWords(*chain, n);
      for (int k : {1, 2}) {
        for (double e : kOracleEpsilons) {
          for (const Symbols& input : language) {
            absl::StatusOr<OutputDistribution> law = ExactMechanismDistribution(
                {MechanismKind::kMarkovOffline, chain->size(), chain,
                 std::nullopt},
                ToWord(input, chain->size()), e, k);
            if (!law.ok()) {
              o.Fail(std::string(law.status().message()));
              continue;
            }
            bool same = false;
            const long double gap = LawGap(
                *law, testing::Exponential(input, language, e, k), same);
            ++laws;
            worst = std::max(worst, gap);
            if (!same) o.Fail(absl::StrCat("support mismatch on ", name));
            if (gap > kLawTolerance) {
              o.Fail(absl::StrFormat("%s chain gap %.3Lg at n=%d k=%d eps=%g",
                                     name, gap, n, k, e));
            }
          }
        }
      }
    }
  }
  const double secs = Seconds(start);
  if (secs >= kC2Seconds) o.Fail(absl::StrFormat("runtime %.2f s", secs));
  if (o.passed) {
    o.detail = absl::StrFormat("%d laws, max |gap| %.3Lg, %.2f s", laws,
                               worst, secs);
  }
  return o;
}

// ---- 3 ----

// Max |log p(o|a) - log p(o|b)| over inputs at distance 1..k, from laws
// computed by the library. Infinite when exactly one side is zero.
long double TestSideLogRatio(const std::vector<Symbols>& inputs,
                             const std::map<Symbols, OutputDistribution>& laws,
                             int k) {
  long double worst = 0.0L;
  for (std::size_t a = 0; a < inputs.size(); ++a) {
    for (std::size_t b = a + 1; b < inputs.size(); ++b) {
      const std::size_t d = Distance(inputs[a], inputs[b]);
      if (d == 0 || d > static_cast<std::size_t>(k)) continue;
      const OutputDistribution& pa = laws.at(inputs[a]);
      const OutputDistribution& pb = laws.at(inputs[b]);
      for (std::size_t i = 0; i < pa.support.size(); ++i) {
        const long double x = pa.probabilities[i];
        const long double y = pb.ProbabilityOf(pa.support[i]);
        if (x == 0.0L && y == 0.0L) continue;
        if (x == 0.0L || y == 0.0L) {
          return std::numeric_limits<long double>::infinity();
        }
        worst = std::max(worst, std::fabs(std::log(x) - std::log(y)));
      }
    }
  }
  return worst;
}

struct DpCase {
  std::string label;
  MechanismDescriptor descriptor;
  std::vector<Symbols> inputs;
};

Outcome Criterion3() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  const MarkovChain example = ExampleChain();
  const MarkovChain random = RandomChain(4, kRandomChainSeed);
  std::size_t checked = 0;
  long double offline_worst_margin = std::numeric_limits<long double>::max();
  bool negative_flagged = true;

  const auto run = [&](const DpCase& c, std::size_t m, std::size_t n,
                       double e, int k, bool expect_pass) {
    std::map<Symbols, OutputDistribution> laws;
    for (const Symbols& input : c.inputs) {
      absl::StatusOr<OutputDistribution> law =
          ExactMechanismDistribution(c.descriptor, ToWord(input, m), e, k);
      if (!law.ok()) {
        o.Fail(std::string(law.status().message()));
        return;
      }
      laws.emplace(input, *std::move(law));
    }
    const long double ratio = TestSideLogRatio(c.inputs, laws, k);
    absl::StatusOr<DpReport> report = VerifyDp(c.descriptor, n, e, k);
    if (!report.ok()) {
      o.Fail(std::string(report.status().message()));
      return;
    }
    ++checked;
    const bool test_pass = ratio <= e + kDpSlack;
    const bool agree =
        (std::isinf(ratio) && report->unbounded()) ||
        std::fabs(ratio - report->max_log_ratio) <= kRatioAgreement;
    if (!agree) {
      o.Fail(absl::StrFormat("%s: test-side ratio %.12Lg vs verifier %.12Lg",
                             c.label, ratio, report->max_log_ratio));
    }
    if (expect_pass) {
      if (!test_pass || !report->passed) {
        o.Fail(absl::StrFormat("%s n=%d k=%d eps=%g: log-ratio %.12Lg",
                               c.label, n, k, e, ratio));
      }
      if (c.descriptor.kind == MechanismKind::kOffline &&
          c.descriptor.alphabet_size > 1) {
        offline_worst_margin = std::min(
            offline_worst_margin, static_cast<long double>(e) - ratio);
      }
    } else if (test_pass || report->passed) {
      negative_flagged = false;
      o.Fail(absl::StrFormat("negative control %s n=%d k=%d eps=%g not "
                             "flagged",
                             c.label, n, k, e));
    }
  };

  for (std::size_t n = 1; n <= 3; ++n) {
    for (int k : {1, 2}) {
      for (double e : kOracleEpsilons) {
        for (std::size_t m = 1; m <= 3; ++m) {
          const std::vector<Symbols> all = AllWords(n, m);
          run({"offline m=" + std::to_string(m),
               {MechanismKind::kOffline, m, nullptr, std::nullopt},
               all},
              m, n, e, k, true);
          run({"online m=" + std::to_string(m),
               {MechanismKind::kOnline, m, nullptr, std::nullopt},
               all},
              m, n, e, k, true);
          if (m >= 2) {
            run({"online tau=1 m=" + std::to_string(m),
                 {MechanismKind::kOnline, m, nullptr, 1.0L},
                 all},
                m, n, e, k, false);
          }
        }
        for (const auto& [name, chain] :
             {std::pair<std::string, const MarkovChain*>{"example", &example},
              {"random", &random}}) {
          const std::size_t s = chain->size();
          run({"mc-offline " + name,
               {MechanismKind::kMarkovOffline, s, chain, std::nullopt},
               testing::FeasibleWords(*chain, n)},
              s, n, e, k, true);
          run({"mc-online " + name,
               {MechanismKind::kMarkovOnline, s, chain, std::nullopt},
               AllWords(n, s)},
              s, n, e, k, true);
          run({"mc-online tau=1 " + name,
               {MechanismKind::kMarkovOnline, s, chain, 1.0L},
               AllWords(n, s)},
              s, n, e, k, false);
        }
      }
    }
  }
  const double secs = Seconds(start);
  if (secs >= kC3Seconds) o.Fail(absl::StrFormat("runtime %.2f s", secs));
  if (o.passed) {
    o.detail = absl::StrFormat(
        "%d sweeps, offline min slack eps - ratio %.3Lg, negative controls "
        "flagged: %s, %.2f s",
        checked, offline_worst_margin, negative_flagged ? "yes" : "no", secs);
  }
  return o;
}

// ---- 4 ----

// Closed forms in c = (m - 1) exp(-epsilon / (scale k)).
std::pair<double, double> ClosedForm(std::size_t n, std::size_t m,
                                     double epsilon, int k, double scale) {
  const double c = (m - 1.0) * std::exp(-epsilon / (scale * k));
  return {n * c / (c + 1.0), n * c / ((c + 1.0) * (c + 1.0))};
}

void CheckMoments(Outcome& o, const std::string& label,
                  const std::vector<double>& d, double mean, double var,
                  std::string& summary) {
  const Stats s = Summarize(d);
  const double zm = std::fabs(s.mean - mean) / s.se_mean;
  const double zv = std::fabs(s.variance - var) / s.se_variance;
  absl::StrAppendFormat(&summary, " %s z=%.2f/%.2f", label, zm, zv);
  if (!(zm <= kSigmas) || !(zv <= kSigmas)) {
    o.Fail(absl::StrFormat(
        "%s: mean %.5f vs %.5f (se %.5f), var %.5f vs %.5f (se %.5f)", label,
        s.mean, mean, s.se_mean, s.variance, var, s.se_variance));
  }
}

std::vector<double> OfflineDistances(const Word& input, double e, int k,
                                     std::size_t samples, Rng rng) {
  absl::StatusOr<OfflineMechanism> mech = OfflineMechanism::Create(input, e, k);
  std::vector<double> d;
  d.reserve(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    d.push_back(static_cast<double>(*HammingDistance(input, mech->Sample(rng))));
  }
  return d;
}

std::vector<double> OnlineDistances(const Word& input, double e, int k,
                                    std::size_t samples, Rng rng) {
  absl::StatusOr<OnlinePolicy> policy =
      OnlinePolicy::Create(input.alphabet_size(), e, k);
  std::vector<double> d;
  d.reserve(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    d.push_back(static_cast<double>(
        *HammingDistance(input, *PrivatizeOnline(input, *policy, rng))));
  }
  return d;
}

Outcome Criterion4() {
  Outcome o;
  constexpr std::size_t n = 15;
  constexpr std::size_t m = 50;
  constexpr int k = 1;
  const Word input = ToWord(ArangeInput(n, m), m);
  std::string summary;
  std::uint64_t key = 0;
  for (double e : kOracleEpsilons) {
    const auto [off_mean, off_var] = ClosedForm(n, m, e, k, 2.0);
    CheckMoments(o, absl::StrFormat("offline eps=%g", e),
                 OfflineDistances(input, e, k, kMomentSamples,
                                  Rng(kSeedC4).Split(key++)),
                 off_mean, off_var, summary);
    const auto [on_mean, on_var] = ClosedForm(n, m, e, k, 1.0);
    CheckMoments(o, absl::StrFormat("online eps=%g", e),
                 OnlineDistances(input, e, k, kMomentSamples,
                                 Rng(kSeedC4).Split(key++)),
                 on_mean, on_var, summary);
  }
  if (o.passed) o.detail = "mean/var z-scores:" + summary;
  return o;
}

// ---- corpus ----

struct Corpus {
  std::string path;
  std::string text;
  bool real = false;  // false: bundled stand-in
};

std::optional<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Corpus LoadCorpus(const std::string& flag) {
  std::vector<std::string> candidates;
  if (!flag.empty()) candidates.push_back(flag);
  if (const char* env = std::getenv("SYMDP_CORPUS")) candidates.push_back(env);
  for (const std::string& path : candidates) {
    if (std::optional<std::string> text = ReadFile(path)) {
      return {path, *text, true};
    }
  }
  const std::string fallback =
      std::string(SYMDP_SOURCE_DIR) + "/tests/data/corpus.txt";
  return {fallback, ReadFile(fallback).value_or(""), false};
}

// A bigram chain plus a feasible input word and its public initial state.
struct BigramWorkload {
  MarkovChain chain;
  Word input;
  std::string description;
};

absl::StatusOr<BigramWorkload> MakeWorkload(const Corpus& corpus) {
  absl::StatusOr<MarkovChain> chain = BuildBigram(corpus.text, {});
  if (!chain.ok()) return chain.status();
  // The experiment sentence, privatized from "anywhere", when the corpus
  // supports it; otherwise the corpus's own opening tokens.
  const std::vector<std::string> sentence = SplitTokens(
      ReadFile(std::string(SYMDP_SOURCE_DIR) + "/data/eggs_input.txt")
          .value_or(""));
  if (absl::StatusOr<MarkovChain> from = chain->WithInitial("anywhere");
      from.ok()) {
    absl::StatusOr<Word> input = EncodeWord(sentence, from->states());
    if (input.ok() && from->IsFeasible(*input)) {
      return BigramWorkload{*std::move(from), *std::move(input),
                            "experiment sentence from 'anywhere'"};
    }
  }
  const std::vector<std::string> tokens = Tokenize(corpus.text, {});
  if (tokens.size() < 2) {
    return absl::InvalidArgumentError("corpus too short");
  }
  const std::size_t n = std::min<std::size_t>(15, tokens.size() - 1);
  std::vector<std::string> words(tokens.begin() + 1, tokens.begin() + 1 + n);
  absl::StatusOr<MarkovChain> from = chain->WithInitial(tokens.front());
  if (!from.ok()) return from.status();
  absl::StatusOr<Word> input = EncodeWord(words, from->states());
  if (!input.ok()) return input.status();
  return BigramWorkload{*std::move(from), *std::move(input),
                        absl::StrCat("opening ", n, " tokens after '",
                                     tokens.front(), "'")};
}

std::string CorpusNote(const Corpus& corpus) {
  return corpus.real ? absl::StrCat("corpus ", corpus.path)
                     : absl::StrCat("corpus unavailable; stand-in ",
                                    corpus.path);
}

// ---- 5 ----

// Bracket on E[d] from brute-force or supplied m_l and the extreme
// successor counts read off the transition matrix.
std::pair<long double, long double> TestSideBracket(
    const MarkovChain& chain, std::size_t n,
    const std::vector<long double>& log_counts, double e, int k) {
  const auto p = testing::Matrix(chain);
  std::size_t nmin = chain.size();
  std::size_t nmax = 0;
  for (const auto& row : p) {
    std::size_t c = 0;
    for (double x : row) c += x > 0.0;
    nmin = std::min(nmin, c);
    nmax = std::max(nmax, c);
  }
  const long double log_b = -static_cast<long double>(e) / (2.0L * k);
  const long double b = std::exp(log_b);
  long double log_z = -std::numeric_limits<long double>::infinity();
  for (std::size_t l = 0; l < log_counts.size(); ++l) {
    const long double t = log_counts[l] + l * log_b;
    if (std::isinf(t)) continue;
    const long double hi = std::max(log_z, t);
    log_z = hi + std::log(std::exp(log_z - hi) + std::exp(t - hi));
  }
  const auto term = [&](long double a) {
    if (a <= 0.0L) return 0.0L;
    return std::exp(std::log(static_cast<long double>(n)) + std::log(a) +
                    log_b + (n - 1.0L) * std::log(a * b + 1.0L) - log_z);
  };
  return {term(nmin - 1.0L), term(static_cast<long double>(nmax))};
}

void CheckBracket(Outcome& o, const std::string& label,
                  const MarkovChain& chain, const Word& input,
                  const std::vector<long double>& log_counts, double e, int k,
                  Rng rng, std::string& summary) {
  absl::StatusOr<MarkovOfflineMechanism> mech =
      MarkovOfflineMechanism::Create(chain, input, e, k);
  if (!mech.ok()) {
    o.Fail(absl::StrCat(label, ": ", mech.status().message()));
    return;
  }
  std::vector<double> d;
  for (std::size_t i = 0; i < kMarkovSamples; ++i) {
    d.push_back(static_cast<double>(*HammingDistance(input, mech->Sample(rng))));
  }
  const Stats s = Summarize(d);
  const auto [lower, upper] =
      TestSideBracket(chain, input.size(), log_counts, e, k);
  const double n = static_cast<double>(input.size());
  absl::StrAppendFormat(&summary, " %s eps=%g: %.3Lg<=%.3f<=%.3Lg var %.3f;",
                        label, e, lower, s.mean, upper, s.variance);
  if (!(s.mean >= lower && s.mean <= upper)) {
    o.Fail(absl::StrFormat("%s eps=%g: mean %.4f outside [%.4Lg, %.4Lg]",
                           label, e, s.mean, lower, upper));
  }
  if (!(s.variance <= n * n / 4.0)) {
    o.Fail(absl::StrFormat("%s eps=%g: variance %.4f > n^2/4", label, e,
                           s.variance));
  }
}

Outcome Criterion5(const Corpus& corpus) {
  Outcome o;
  std::string summary;
  std::uint64_t key = 0;
  const MarkovChain example = ExampleChain();
  const Symbols input_symbols = {1, 2, 3};
  std::vector<long double> log_counts;
  for (std::uint64_t c : testing::FeasibleCounts(example, input_symbols)) {
    log_counts.push_back(c == 0 ? -std::numeric_limits<long double>::infinity()
                                : std::log(static_cast<long double>(c)));
  }
  const Word input = ToWord(input_symbols, example.size());
  for (double e : kOracleEpsilons) {
    CheckBracket(o, "example", example, input, log_counts, e, 1,
                 Rng(kSeedC5).Split(key++), summary);
  }

  absl::StatusOr<BigramWorkload> w = MakeWorkload(corpus);
  if (!w.ok()) {
    o.Fail(absl::StrCat("bigram: ", w.status().message()));
  } else {
    // m_l for the bigram is far past brute force; the library's counts are
    // cross-checked against enumeration on small chains in criterion 2.
    absl::StatusOr<FeasibleDistanceCounts> counts =
        CountFeasibleAtDistance(w->chain, w->input);
    std::vector<long double> bigram_logs;
    for (const BigInt& c : counts->counts) bigram_logs.push_back(LogOf(c));
    for (double e : kOracleEpsilons) {
      CheckBracket(o, "bigram", w->chain, w->input, bigram_logs, e, 1,
                   Rng(kSeedC5).Split(key++), summary);
    }
  }
  if (!corpus.real) o.Fail(CorpusNote(corpus));
  o.detail = o.passed ? summary : o.detail + " |" + summary;
  return o;
}

// ---- 6 ----

Outcome Criterion6(const Corpus& corpus) {
  Outcome o;
  absl::StatusOr<BigramWorkload> w = MakeWorkload(corpus);
  if (!w.ok()) {
    o.Fail(absl::StrCat("bigram: ", w.status().message()));
    return o;
  }
  const auto p = testing::Matrix(w->chain);
  const std::uint32_t initial = w->chain.initial();
  std::size_t offline_bad = 0;
  std::size_t online_bad = 0;
  std::uint64_t key = 0;
  for (double e : kOracleEpsilons) {
    absl::StatusOr<MarkovOfflineMechanism> mech =
        MarkovOfflineMechanism::Create(w->chain, w->input, e, 1);
    absl::StatusOr<MarkovOnlinePolicy> policy =
        MarkovOnlinePolicy::Create(w->chain, e, 1);
    if (!mech.ok() || !policy.ok()) {
      o.Fail("mechanism construction failed");
      return o;
    }
    Rng offline_rng = Rng(kSeedC6).Split(key++);
    Rng online_rng = Rng(kSeedC6).Split(key++);
    for (std::size_t i = 0; i < kMarkovSamples; ++i) {
      offline_bad += !testing::Feasible(
          p, initial, ToSymbols(mech->Sample(offline_rng)));
      online_bad += !testing::Feasible(
          p, initial,
          ToSymbols(
              *PrivatizeMarkovOnline(w->input, initial, *policy, online_rng)));
    }
  }
  const std::string summary = absl::StrFormat(
      "%d states, %s; infeasible outputs: offline %d/%d, online %d/%d",
      w->chain.size(), w->description, offline_bad,
      kMarkovSamples * kOracleEpsilons.size(), online_bad,
      kMarkovSamples * kOracleEpsilons.size());
  if (offline_bad + online_bad > 0) o.Fail(summary);
  if (!corpus.real) o.Fail(CorpusNote(corpus) + "; " + summary);
  if (o.passed) o.detail = summary;
  return o;
}

// ---- 7 ----

Outcome Criterion7(const Corpus& corpus) {
  Outcome o;
  if (!corpus.real) o.Fail(CorpusNote(corpus));
  absl::StatusOr<MarkovChain> bigram = BuildBigram(corpus.text, {});
  if (!bigram.ok()) {
    o.Fail(std::string(bigram.status().message()));
    return o;
  }
  std::string summary = absl::StrFormat("(a) %d states;", bigram->size());
  if (bigram->size() != kExpectedStates) {
    o.Fail(absl::StrFormat("state count %d != %d", bigram->size(),
                           kExpectedStates));
  }

  const std::vector<std::string> sentence = SplitTokens(
      ReadFile(std::string(SYMDP_SOURCE_DIR) + "/data/eggs_input.txt")
          .value_or(""));
  absl::StatusOr<Word> input = EncodeWord(sentence, bigram->states());
  if (!input.ok()) {
    o.Fail(absl::StrCat("(b) input: ", input.status().message()));
    absl::StrAppend(&summary, " (b)-(d) not run: ", input.status().message());
  }
  std::map<std::string, std::vector<Stats>> curves;
  std::uint64_t key = 0;
  for (const char* start : {"anywhere", "green", "could"}) {
    absl::StatusOr<MarkovChain> chain = bigram->WithInitial(start);
    if (!chain.ok() || !input.ok()) {
      o.Fail(absl::StrCat("(b) no state '", start, "'"));
      continue;
    }
    for (double e : kCurveEpsilons) {
      absl::StatusOr<MarkovOnlinePolicy> policy =
          MarkovOnlinePolicy::Create(*chain, e, 1);
      Rng rng = Rng(kSeedC7).Split(key++);
      std::vector<double> d;
      for (std::size_t i = 0; i < kCurveSamples; ++i) {
        d.push_back(static_cast<double>(*HammingDistance(
            *input, *PrivatizeMarkovOnline(*input, chain->initial(), *policy,
                                           rng))));
      }
      curves[start].push_back(Summarize(d));
    }
    const std::vector<Stats>& c = curves[start];
    absl::StrAppend(&summary, " ", start, ":");
    for (const Stats& s : c) absl::StrAppendFormat(&summary, " %.2f", s.mean);
    for (std::size_t i = 0; i + 1 < c.size(); ++i) {
      const double allowance =
          kSigmas * std::hypot(c[i].se_mean, c[i + 1].se_mean);
      if (c[i + 1].mean > c[i].mean + allowance) {
        o.Fail(absl::StrFormat("(b) %s: mean rises %.3f -> %.3f at eps=%g",
                               start, c[i].mean, c[i + 1].mean,
                               kCurveEpsilons[i + 1]));
      }
    }
    absl::StrAppend(&summary, ";");
  }
  if (curves.count("anywhere") && curves.count("green")) {
    const double anywhere = curves["anywhere"].back().mean;
    const double green = curves["green"].back().mean;
    if (!(anywhere <= kAnywhereMaxError)) {
      o.Fail(absl::StrFormat("(c) anywhere at eps=10: %.3f > %g", anywhere,
                             kAnywhereMaxError));
    }
    if (!(green >= kGreenMinError)) {
      o.Fail(absl::StrFormat("(c) green at eps=10: %.3f < %g", green,
                             kGreenMinError));
    }
  }

  if (absl::StatusOr<MarkovChain> chain = bigram->WithInitial("anywhere");
      chain.ok() && input.ok()) {
    const std::size_t successors = chain->SuccessorCount(chain->initial());
    absl::StatusOr<std::vector<std::vector<long double>>> marginals =
        MarkovOnlineMarginals(*chain, *input, 5.0, 1);
    const std::optional<Symbol> i_state = chain->states().index("I");
    if (!marginals.ok() || !i_state) {
      o.Fail("(d) marginal unavailable");
    } else {
      const double p = static_cast<double>((*marginals)[0][*i_state]);
      const double closed = 1.0 / ((successors - 1.0) * std::exp(-5.0) + 1.0);
      absl::StrAppendFormat(&summary,
                            " (d) N(anywhere)=%d, P[I]=%.4f, closed form %.4f",
                            successors, p, closed);
      if (std::fabs(p - closed) > 1e-9) {
        o.Fail(absl::StrFormat("(d) marginal %.6f != %.6f", p, closed));
      }
      if (successors == 2) {
        if (std::fabs(p - kReportedMarginal) > kMarginalTolerance) {
          o.Fail(absl::StrFormat("(d) %.4f vs 0.993", p));
        }
      } else {
        absl::StrAppend(&summary,
                        " (discrepancy: N != 2, 0.993 check skipped)");
      }
    }
  }
  o.detail = o.passed ? summary : o.detail + " |" + summary;
  return o;
}

// ---- 8 ----

Outcome Criterion8() {
  Outcome o;
  const Word x = ToWord({0, 1, 2}, 3);
  absl::StatusOr<Mnfa> mnfa = Mnfa::BuildWithPolicy(x, 2);
  if (!mnfa.ok()) {
    o.Fail(std::string(mnfa.status().message()));
    return o;
  }
  if (mnfa->PathCount(mnfa->initial()) != BigInt(12)) {
    o.Fail(absl::StrCat("V(q00) = ",
                        mnfa->PathCount(mnfa->initial()).str()));
  }
  std::size_t at_two = 0;
  BigRational total = 0;
  for (const Symbols& w : AllWords(3, 3)) {
    const BigRational p = mnfa->PathProbability(ToWord(w, 3));
    total += p;
    if (Distance(w, {0, 1, 2}) == 2) {
      ++at_two;
      if (p != BigRational(1, 12)) {
        o.Fail(absl::StrCat("P[", Show(w), "] = ", p.str()));
      }
    } else if (p != 0) {
      o.Fail(absl::StrCat("P[", Show(w), "] = ", p.str(), " off class"));
    }
  }
  if (at_two != 12) o.Fail(absl::StrCat(at_two, " words at distance 2"));
  if (total != 1) o.Fail("run law does not sum to 1");
  if (o.passed) {
    o.detail = "V(q00) = 12; each of the 12 words has probability exactly 1/12";
  }
  return o;
}

// ---- 9 ----

Outcome Criterion9() {
  Outcome o;
  std::size_t states = 0;
  for (std::size_t m = 1; m <= 5; ++m) {
    for (std::size_t n = 1; n <= 8; ++n) {
      const Symbols reference = ArangeInput(n, m);
      std::vector<std::uint64_t> brute(n + 1, 0);
      for (const Symbols& w : AllWords(n, m)) ++brute[Distance(reference, w)];
      for (std::size_t l = 0; l <= n; ++l) {
        const std::uint64_t closed_total =
            testing::Choose(n, l) * testing::Power(m - 1, l);
        if (closed_total != brute[l]) {
          o.Fail(absl::StrFormat("closed form %d != %d words at n=%d m=%d l=%d",
                                 closed_total, brute[l], n, m, l));
        }
        absl::StatusOr<Mnfa> mnfa =
            Mnfa::BuildWithPolicy(ToWord(reference, m), l);
        if (!mnfa.ok()) {
          if (brute[l] != 0) {
            o.Fail(absl::StrCat("build failed at n=", n, " m=", m, " l=", l));
          }
          continue;
        }
        for (const MnfaState& q : mnfa->States()) {
          ++states;
          const std::uint64_t closed =
              q.mismatches > l
                  ? 0
                  : testing::Choose(n - q.emitted, l - q.mismatches) *
                        testing::Power(m - 1, l - q.mismatches);
          if (mnfa->PathCount(q) != BigInt(closed)) {
            o.Fail(absl::StrFormat("V(q_%d,%d) = %s != %d at n=%d m=%d l=%d",
                                   q.emitted, q.mismatches,
                                   mnfa->PathCount(q).str(), closed, n, m, l));
          }
        }
      }
    }
  }
  if (o.passed) {
    o.detail = absl::StrCat(states, " states match; V(q00) matches "
                                    "enumeration for every class");
  }
  return o;
}

// ---- 10 ----

Outcome Criterion10() {
  Outcome o;
  constexpr std::size_t n = 15;
  constexpr std::size_t m = 50;
  constexpr int k = 1;
  const Word input = ToWord(ArangeInput(n, m), m);
  std::vector<double> offline_grid;
  for (int i = 1; i <= 9; ++i) offline_grid.push_back(0.05 * i);
  std::vector<double> online_grid;
  for (int i = 1; i <= 19; ++i) online_grid.push_back(0.05 * i);
  std::size_t checks = 0;
  // Largest empirical frequency / bound, per mechanism.
  double offline_tightest = 0.0;
  double online_tightest = 0.0;
  std::uint64_t key = 0;
  for (double e : kOracleEpsilons) {
    const double off_mean = ClosedForm(n, m, e, k, 2.0).first;
    const std::vector<double> off = OfflineDistances(
        input, e, k, kTailSamples, Rng(kSeedC10).Split(key++));
    for (double eta : offline_grid) {
      const double bound =
          std::min(1.0, 2.0 * std::exp(-2.0 * eta * eta / (n * n)));
      std::size_t hits = 0;
      for (double d : off) hits += std::fabs(d - off_mean) > eta;
      const double freq = static_cast<double>(hits) / off.size();
      ++checks;
      offline_tightest = std::max(offline_tightest, freq / bound);
      if (freq > bound) {
        o.Fail(absl::StrFormat("offline eps=%g eta=%g: %.5f > %.5f", e, eta,
                               freq, bound));
      }
    }
    const double on_mean = ClosedForm(n, m, e, k, 1.0).first;
    const std::vector<double> on = OnlineDistances(
        input, e, k, kTailSamples, Rng(kSeedC10).Split(key++));
    for (double eta : online_grid) {
      const double upper =
          std::min(1.0, std::exp(-eta * eta * on_mean / (2.0 + eta)));
      const double lower = std::min(1.0, std::exp(-eta * eta * on_mean / 2.0));
      std::size_t above = 0;
      std::size_t below = 0;
      for (double d : on) {
        above += d > (1.0 + eta) * on_mean;
        below += d < (1.0 - eta) * on_mean;
      }
      const double fa = static_cast<double>(above) / on.size();
      const double fb = static_cast<double>(below) / on.size();
      checks += 2;
      online_tightest = std::max({online_tightest, fa / upper, fb / lower});
      if (fa > upper || fb > lower) {
        o.Fail(absl::StrFormat(
            "online eps=%g eta=%g: upper %.5f/%.5f lower %.5f/%.5f", e, eta,
            fa, upper, fb, lower));
      }
    }
  }
  if (o.passed) {
    o.detail = absl::StrFormat(
        "%d tail checks; largest empirical/bound ratio offline %.3f, "
        "online %.3f",
        checks, offline_tightest, online_tightest);
  }
  return o;
}

}  // namespace
}  // namespace symdp

int main(int argc, char** argv) {
  CLI::App app{"symdp acceptance checks"};
  int only = 0;
  std::string corpus_path;
  app.add_option("--criterion", only, "Run a single criterion (1-10)")
      ->check(CLI::Range(1, 10));
  app.add_option("--corpus", corpus_path, "Source text for the bigram");
  CLI11_PARSE(app, argc, argv);

  const symdp::Corpus corpus = symdp::LoadCorpus(corpus_path);
  const std::vector<std::function<symdp::Outcome()>> criteria = {
      symdp::Criterion1,
      symdp::Criterion2,
      symdp::Criterion3,
      symdp::Criterion4,
      [&] { return symdp::Criterion5(corpus); },
      [&] { return symdp::Criterion6(corpus); },
      [&] { return symdp::Criterion7(corpus); },
      symdp::Criterion8,
      symdp::Criterion9,
      symdp::Criterion10,
  };
  bool all = true;
  for (int i = 1; i <= static_cast<int>(criteria.size()); ++i) {
    if (only != 0 && i != only) continue;
    const symdp::Outcome outcome = criteria[i - 1]();
    std::printf("criterion %d: %s  %s\n", i, outcome.passed ? "PASS" : "FAIL",
                outcome.detail.c_str());
    std::fflush(stdout);
    all = all && outcome.passed;
  }
  return all ? 0 : 1;
}
