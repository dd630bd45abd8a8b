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

#include "symdp/mnfa.h"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <utility>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"

namespace symdp {

Mnfa::Mnfa(Word reference, std::size_t distance)
    : reference_(std::move(reference)), distance_(distance) {
  const std::size_t n = reference_.size();
  layer_offset_.reserve(n + 2);
  std::size_t offset = 0;
  for (std::size_t i = 0; i <= n; ++i) {
    layer_offset_.push_back(offset);
    offset += Highest(i) - Lowest(i) + 1;
  }
  layer_offset_.push_back(offset);
  nodes_.resize(offset);
}

absl::StatusOr<Mnfa> Mnfa::Build(const Word& reference, std::size_t distance) {
  if (distance > reference.size()) {
    return absl::InvalidArgumentError(
        absl::StrCat("distance ", distance, " exceeds word length ",
                     reference.size()));
  }
  if (distance > 0 && reference.alphabet_size() < 2) {
    return absl::FailedPreconditionError(
        "a one-symbol alphabet has no word at positive distance");
  }
  return Mnfa(reference, distance);
}

std::size_t Mnfa::Lowest(std::size_t emitted) const {
  const std::size_t remaining = length() - emitted;
  return distance_ > remaining ? distance_ - remaining : 0;
}

std::size_t Mnfa::Highest(std::size_t emitted) const {
  return std::min(emitted, distance_);
}

bool Mnfa::Contains(MnfaState q) const {
  return q.emitted <= length() && q.mismatches >= Lowest(q.emitted) &&
         q.mismatches <= Highest(q.emitted);
}

std::size_t Mnfa::IndexOf(MnfaState q) const {
  assert(Contains(q));
  return layer_offset_[q.emitted] + (q.mismatches - Lowest(q.emitted));
}

std::vector<MnfaState> Mnfa::States() const {
  std::vector<MnfaState> out;
  out.reserve(nodes_.size());
  for (std::size_t i = 0; i <= length(); ++i) {
    for (std::size_t e = Lowest(i); e <= Highest(i); ++e) out.push_back({i, e});
  }
  return out;
}

std::optional<MnfaState> Mnfa::Next(MnfaState q, Symbol sigma) const {
  if (!Contains(q) || q.emitted >= length() || sigma >= alphabet_size()) {
    return std::nullopt;
  }
  MnfaState next{q.emitted + 1,
                 q.mismatches + (sigma != reference_[q.emitted] ? 1 : 0)};
  if (!Contains(next)) return std::nullopt;
  return next;
}

bool Mnfa::Accepts(const Word& word) const {
  if (word.size() != length() || word.alphabet_size() != alphabet_size()) {
    return false;
  }
  std::optional<MnfaState> q = initial();
  for (std::size_t i = 0; i < word.size() && q; ++i) q = Next(*q, word[i]);
  return q && *q == accepting();
}

Mnfa Mnfa::SynthesizePolicy(Mnfa mnfa) {
  const std::size_t n = mnfa.length();
  const std::size_t m = mnfa.alphabet_size();
  std::vector<char> done(mnfa.nodes_.size(), 0);

  mnfa.nodes_[mnfa.IndexOf(mnfa.accepting())].paths = 1;
  std::vector<MnfaState> current{mnfa.accepting()};
  for (std::size_t counter = 1; counter <= n; ++counter) {
    std::vector<MnfaState> active;
    for (const MnfaState& target : current) {
      // Predecessors of target: the matching edge from (i, e) and the
      // mismatching edges from (i, e - 1).
      const std::size_t i = target.emitted - 1;
      std::vector<MnfaState> predecessors;
      if (mnfa.Contains({i, target.mismatches})) {
        predecessors.push_back({i, target.mismatches});
      }
      if (target.mismatches > 0 && mnfa.Contains({i, target.mismatches - 1})) {
        predecessors.push_back({i, target.mismatches - 1});
      }
      for (const MnfaState& q : predecessors) {
        const std::size_t idx = mnfa.IndexOf(q);
        if (done[idx]) continue;
        done[idx] = 1;
        Node& node = mnfa.nodes_[idx];
        const MnfaState match{i + 1, q.mismatches};
        const MnfaState miss{i + 1, q.mismatches + 1};
        BigInt total = 0;
        if (mnfa.Contains(match)) total += mnfa.nodes_[mnfa.IndexOf(match)].paths;
        if (mnfa.Contains(miss)) {
          total += BigInt(m - 1) * mnfa.nodes_[mnfa.IndexOf(miss)].paths;
        }
        node.paths = total;
        const long double log_total = LogOf(total);
        if (mnfa.Contains(match)) {
          node.keep = std::exp(LogOf(mnfa.nodes_[mnfa.IndexOf(match)].paths) -
                               log_total);
        }
        if (mnfa.Contains(miss)) {
          node.substitute = std::exp(
              LogOf(mnfa.nodes_[mnfa.IndexOf(miss)].paths) - log_total);
        }
        active.push_back(q);
      }
    }
    current = std::move(active);
  }
  mnfa.has_policy_ = true;
  return mnfa;
}

absl::StatusOr<Mnfa> Mnfa::BuildWithPolicy(const Word& reference,
                                           std::size_t distance) {
  absl::StatusOr<Mnfa> built = Build(reference, distance);
  if (!built.ok()) return built.status();
  return SynthesizePolicy(*std::move(built));
}

const BigInt& Mnfa::PathCount(MnfaState q) const {
  assert(has_policy_);
  return nodes_[IndexOf(q)].paths;
}

BigRational Mnfa::TransitionProbability(MnfaState q, Symbol sigma) const {
  assert(has_policy_);
  std::optional<MnfaState> next = Next(q, sigma);
  if (!next) return 0;
  return BigRational(PathCount(*next), PathCount(q));
}

BigRational Mnfa::PathProbability(const Word& word) const {
  if (word.size() != length() || word.alphabet_size() != alphabet_size()) {
    return 0;
  }
  BigRational p = 1;
  MnfaState q = initial();
  for (std::size_t i = 0; i < word.size(); ++i) {
    std::optional<MnfaState> next = Next(q, word[i]);
    if (!next) return 0;
    p *= TransitionProbability(q, word[i]);
    q = *next;
  }
  return q == accepting() ? p : BigRational(0);
}

Word Mnfa::SampleRun(Rng& rng) const {
  assert(has_policy_);
  const std::size_t n = length();
  const std::size_t m = alphabet_size();
  std::vector<Symbol> out;
  out.reserve(n);
  MnfaState q = initial();
  for (std::size_t i = 0; i < n; ++i) {
    const Node& node = nodes_[IndexOf(q)];
    const double u = rng.Uniform();
    const Symbol expected = reference_[i];
    if (node.substitute <= 0.0L || u < node.keep) {
      out.push_back(expected);
    } else {
      long double slot = (static_cast<long double>(u) - node.keep) /
                         node.substitute;
      std::size_t rank = slot <= 0.0L ? 0 : static_cast<std::size_t>(slot);
      rank = std::min(rank, m - 2);
      // rank-th symbol in index order, skipping the reference symbol.
      Symbol sigma = static_cast<Symbol>(rank);
      if (sigma >= expected) ++sigma;
      out.push_back(sigma);
      ++q.mismatches;
    }
    ++q.emitted;
  }
  return *Word::Create(std::move(out), m);
}

std::string Mnfa::ToDot(const Alphabet* alphabet) const {
  auto label = [&](Symbol s) {
    return alphabet != nullptr ? alphabet->token(s) : absl::StrCat(s);
  };
  auto name = [](MnfaState q) {
    return absl::StrCat("q_", q.emitted, "_", q.mismatches);
  };
  std::string out = "digraph mnfa {\n  rankdir=LR;\n";
  for (const MnfaState& q : States()) {
    const bool accept = q == accepting();
    absl::StrAppend(&out, "  ", name(q), " [shape=",
                    accept ? "doublecircle" : "circle", ", label=\"q",
                    q.emitted, ",", q.mismatches);
    if (has_policy_) absl::StrAppend(&out, "\\nV=", PathCount(q).str());
    absl::StrAppend(&out, "\"];\n");
  }
  const bool expand = alphabet_size() <= 10;
  for (const MnfaState& q : States()) {
    if (q.emitted == length()) continue;
    const Symbol expected = reference_[q.emitted];
    for (Symbol s = 0; s < alphabet_size(); ++s) {
      if (!expand && s != expected && s != (expected == 0 ? 1 : 0)) continue;
      std::optional<MnfaState> next = Next(q, s);
      if (!next) continue;
      std::string edge = s == expected || expand
                             ? label(s)
                             : absl::StrCat("not ", label(expected), " (x",
                                            alphabet_size() - 1, ")");
      if (has_policy_) {
        absl::StrAppend(&edge, " : ",
                        absl::StrFormat("%.4g", static_cast<double>(
                                                    ToLongDouble(
                                                        TransitionProbability(
                                                            q, s)))));
      }
      absl::StrAppend(&out, "  ", name(q), " -> ", name(*next), " [label=\"",
                      edge, "\"];\n");
    }
  }
  out += "}\n";
  return out;
}

}  // namespace symdp
