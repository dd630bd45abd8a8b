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

#include "symdp/markov.h"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <map>
#include <utility>

#include "absl/strings/str_cat.h"
#include "json.hpp"

namespace symdp {

using OrderedJson = nlohmann::ordered_json;

MarkovChain::MarkovChain(Alphabet states, std::vector<double> transitions,
                         Symbol initial)
    : states_(std::move(states)),
      transitions_(std::move(transitions)),
      successors_(states_.size()),
      initial_(initial) {
  const std::size_t n = states_.size();
  for (Symbol from = 0; from < n; ++from) {
    for (Symbol to = 0; to < n; ++to) {
      if (transitions_[from * n + to] > 0.0) successors_[from].push_back(to);
    }
  }
}

absl::StatusOr<MarkovChain> MarkovChain::Create(
    Alphabet states, std::vector<std::vector<double>> transitions,
    Symbol initial) {
  const std::size_t n = states.size();
  if (transitions.size() != n) {
    return absl::InvalidArgumentError(absl::StrCat(
        "transition matrix has ", transitions.size(), " rows for ", n,
        " states"));
  }
  if (initial >= n) {
    return absl::InvalidArgumentError("initial state is out of range");
  }
  std::vector<double> flat;
  flat.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (transitions[i].size() != n) {
      return absl::InvalidArgumentError(absl::StrCat(
          "row '", states.token(i), "' has ", transitions[i].size(),
          " entries, expected ", n));
    }
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double p = transitions[i][j];
      if (!(p >= 0.0 && p <= 1.0)) {
        return absl::InvalidArgumentError(absl::StrCat(
            "P['", states.token(j), "' | '", states.token(i), "'] = ", p,
            " is not a probability"));
      }
      sum += p;
      flat.push_back(p);
    }
    if (std::abs(sum - 1.0) > 1e-9) {
      return absl::InvalidArgumentError(absl::StrCat(
          "row '", states.token(i), "' sums to ", sum, ", expected 1"));
    }
  }
  return MarkovChain(std::move(states), std::move(flat), initial);
}

absl::StatusOr<MarkovChain> MarkovChain::FromJson(std::string_view json) {
  OrderedJson parsed = OrderedJson::parse(json, nullptr, false);
  if (parsed.is_discarded() || !parsed.is_object()) {
    return absl::InvalidArgumentError("chain JSON must be an object");
  }
  if (!parsed.contains("states") || !parsed["states"].is_array()) {
    return absl::InvalidArgumentError("chain JSON needs a \"states\" array");
  }
  std::vector<std::string> names;
  for (const auto& s : parsed["states"]) {
    if (!s.is_string()) {
      return absl::InvalidArgumentError("state names must be strings");
    }
    names.push_back(s.get<std::string>());
  }
  absl::StatusOr<Alphabet> states = Alphabet::Create(std::move(names));
  if (!states.ok()) return states.status();
  if (!parsed.contains("initial") || !parsed["initial"].is_string()) {
    return absl::InvalidArgumentError("chain JSON needs an \"initial\" state");
  }
  std::optional<Symbol> initial =
      states->index(parsed["initial"].get<std::string>());
  if (!initial) {
    return absl::InvalidArgumentError(absl::StrCat(
        "initial state '", parsed["initial"].get<std::string>(),
        "' is not a listed state"));
  }
  const std::size_t n = states->size();
  std::vector<std::vector<double>> matrix(n, std::vector<double>(n, 0.0));
  std::vector<std::vector<char>> seen(n, std::vector<char>(n, 0));
  if (parsed.contains("transitions")) {
    if (!parsed["transitions"].is_array()) {
      return absl::InvalidArgumentError("\"transitions\" must be an array");
    }
    for (const auto& t : parsed["transitions"]) {
      if (!t.is_object() || !t.contains("from") || !t.contains("to") ||
          !t.contains("p") || !t["from"].is_string() || !t["to"].is_string() ||
          !t["p"].is_number()) {
        return absl::InvalidArgumentError(
            "each transition needs string \"from\"/\"to\" and numeric \"p\"");
      }
      const std::string from = t["from"].get<std::string>();
      const std::string to = t["to"].get<std::string>();
      std::optional<Symbol> a = states->index(from);
      std::optional<Symbol> b = states->index(to);
      if (!a || !b) {
        return absl::InvalidArgumentError(absl::StrCat(
            "transition '", from, "' -> '", to, "' names an unknown state"));
      }
      if (seen[*a][*b]) {
        return absl::InvalidArgumentError(absl::StrCat(
            "transition '", from, "' -> '", to, "' is listed twice"));
      }
      seen[*a][*b] = 1;
      matrix[*a][*b] = t["p"].get<double>();
    }
  }
  return Create(*std::move(states), std::move(matrix), *initial);
}

std::string MarkovChain::ToJson() const {
  OrderedJson out;
  out["states"] = states_.tokens();
  out["initial"] = states_.token(initial_);
  OrderedJson transitions = OrderedJson::array();
  for (Symbol from = 0; from < size(); ++from) {
    for (Symbol to : successors_[from]) {
      OrderedJson t;
      t["from"] = states_.token(from);
      t["to"] = states_.token(to);
      t["p"] = Probability(from, to);
      transitions.push_back(std::move(t));
    }
  }
  out["transitions"] = std::move(transitions);
  return out.dump(2) + "\n";
}

std::size_t MarkovChain::MaxSuccessorCount() const {
  std::size_t best = 0;
  for (const auto& c : successors_) best = std::max(best, c.size());
  return best;
}

std::size_t MarkovChain::MinSuccessorCount() const {
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for (const auto& c : successors_) best = std::min(best, c.size());
  return best;
}

absl::StatusOr<MarkovChain> MarkovChain::WithInitial(Symbol initial) const {
  if (initial >= size()) {
    return absl::InvalidArgumentError("initial state is out of range");
  }
  MarkovChain copy = *this;
  copy.initial_ = initial;
  return copy;
}

absl::StatusOr<MarkovChain> MarkovChain::WithInitial(
    std::string_view token) const {
  std::optional<Symbol> s = states_.index(token);
  if (!s) {
    return absl::InvalidArgumentError(
        absl::StrCat("unknown state '", std::string(token), "'"));
  }
  return WithInitial(*s);
}

absl::Status MarkovChain::CheckFeasible(const Word& word) const {
  if (word.alphabet_size() != size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "word is over ", word.alphabet_size(), " symbols, chain has ",
        size(), " states"));
  }
  Symbol previous = initial_;
  for (std::size_t t = 0; t < word.size(); ++t) {
    if (!CanTransition(previous, word[t])) {
      return absl::FailedPreconditionError(absl::StrCat(
          "infeasible transition '", states_.token(previous), "' -> '",
          states_.token(word[t]), "' at position ", t));
    }
    previous = word[t];
  }
  return absl::OkStatus();
}

MarkovChain ExampleChain() {
  const double third = 1.0 / 3.0;
  std::vector<std::vector<double>> p = {{0.0, third, third, third},
                                        {0.0, 0.5, 0.5, 0.0},
                                        {0.5, 0.0, 0.0, 0.5},
                                        {0.0, 0.5, 0.0, 0.5}};
  return *MarkovChain::Create(*Alphabet::Create({"s0", "s1", "s2", "s3"}),
                              std::move(p), 0);
}

MarkovChain RandomChain(std::size_t num_states, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < num_states; ++i) {
    names.push_back(absl::StrCat("s", i));
  }
  std::vector<std::vector<double>> p(num_states,
                                     std::vector<double>(num_states, 0.0));
  for (std::size_t i = 0; i < num_states; ++i) {
    double total = 0.0;
    while (total == 0.0) {
      for (std::size_t j = 0; j < num_states; ++j) {
        p[i][j] = rng.Uniform() < 0.6 ? 0.1 + rng.Uniform() : 0.0;
        total += p[i][j];
      }
    }
    for (double& x : p[i]) x /= total;
  }
  return *MarkovChain::Create(*Alphabet::Create(std::move(names)),
                              std::move(p), 0);
}

BigInt FeasibleDistanceCounts::Total() const {
  BigInt total = 0;
  for (const BigInt& c : counts) total += c;
  return total;
}

absl::StatusOr<FeasibleDistanceCounts> CountFeasibleAtDistance(
    const MarkovChain& chain, const Word& input) {
  if (input.alphabet_size() != chain.size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "word is over ", input.alphabet_size(), " symbols, chain has ",
        chain.size(), " states"));
  }
  const std::size_t n = input.size();
  const std::size_t num_states = chain.size();
  // completions[r * |S| + s]: feasible suffixes from chain state s after
  // position i with exactly r further mismatches.
  std::vector<BigInt> completions(num_states, 1);
  for (std::size_t i = n; i-- > 0;) {
    const std::size_t max_remaining = n - i;
    std::vector<BigInt> layer((max_remaining + 1) * num_states, 0);
    for (Symbol s = 0; s < num_states; ++s) {
      for (Symbol next : chain.Successors(s)) {
        if (next == input[i]) {
          for (std::size_t r = 0; r < max_remaining; ++r) {
            layer[r * num_states + s] += completions[r * num_states + next];
          }
        } else {
          for (std::size_t r = 1; r <= max_remaining; ++r) {
            layer[r * num_states + s] +=
                completions[(r - 1) * num_states + next];
          }
        }
      }
    }
    completions = std::move(layer);
  }
  FeasibleDistanceCounts out;
  out.counts.reserve(n + 1);
  for (std::size_t l = 0; l <= n; ++l) {
    out.counts.push_back(completions[l * num_states + chain.initial()]);
  }
  return out;
}

Pmnfa::Pmnfa(const MarkovChain& chain, Word reference, std::size_t distance)
    : successors_(chain.size()),
      num_states_(chain.size()),
      initial_(chain.initial()),
      reference_(std::move(reference)),
      distance_(distance) {
  for (Symbol s = 0; s < num_states_; ++s) {
    auto c = chain.Successors(s);
    successors_[s].assign(c.begin(), c.end());
  }
  std::size_t offset = 0;
  for (std::size_t i = 0; i <= length(); ++i) {
    layer_offset_.push_back(offset);
    offset += (Highest(i) - Lowest(i) + 1) * num_states_;
  }
  layer_offset_.push_back(offset);
  nodes_.resize(offset);
}

std::size_t Pmnfa::Lowest(std::size_t emitted) const {
  const std::size_t remaining = length() - emitted;
  return distance_ > remaining ? distance_ - remaining : 0;
}

std::size_t Pmnfa::Highest(std::size_t emitted) const {
  return std::min(emitted, distance_);
}

bool Pmnfa::InBand(std::size_t emitted, std::size_t mismatches) const {
  return emitted <= length() && mismatches >= Lowest(emitted) &&
         mismatches <= Highest(emitted);
}

bool Pmnfa::Contains(PmnfaState q) const {
  return InBand(q.emitted, q.mismatches) && q.chain_state < num_states_;
}

std::size_t Pmnfa::IndexOf(PmnfaState q) const {
  assert(Contains(q));
  return layer_offset_[q.emitted] +
         (q.mismatches - Lowest(q.emitted)) * num_states_ + q.chain_state;
}

std::optional<PmnfaState> Pmnfa::Next(PmnfaState q, Symbol next_state) const {
  if (!Contains(q) || q.emitted >= length() || next_state >= num_states_) {
    return std::nullopt;
  }
  const auto& c = successors_[q.chain_state];
  if (!std::binary_search(c.begin(), c.end(), next_state)) return std::nullopt;
  PmnfaState next{q.emitted + 1,
                  q.mismatches + (next_state != reference_[q.emitted] ? 1 : 0),
                  next_state};
  if (!InBand(next.emitted, next.mismatches)) return std::nullopt;
  return next;
}

void Pmnfa::Synthesize() {
  const std::size_t n = length();
  std::vector<std::vector<Symbol>> predecessors(num_states_);
  for (Symbol s = 0; s < num_states_; ++s) {
    for (Symbol next : successors_[s]) predecessors[next].push_back(s);
  }
  std::vector<char> done(nodes_.size(), 0);
  std::vector<PmnfaState> current;
  for (Symbol s = 0; s < num_states_; ++s) {
    PmnfaState accept{n, distance_, s};
    nodes_[IndexOf(accept)].paths = 1;
    current.push_back(accept);
  }
  for (std::size_t counter = 1; counter <= n; ++counter) {
    std::vector<PmnfaState> active;
    for (const PmnfaState& target : current) {
      const std::size_t i = target.emitted - 1;
      const bool match = target.chain_state == reference_[i];
      if (!match && target.mismatches == 0) continue;
      const std::size_t e = match ? target.mismatches : target.mismatches - 1;
      if (!InBand(i, e)) continue;
      for (Symbol s : predecessors[target.chain_state]) {
        const PmnfaState q{i, e, s};
        const std::size_t idx = IndexOf(q);
        if (done[idx]) continue;
        done[idx] = 1;
        BigInt total = 0;
        for (Symbol next : successors_[s]) {
          if (std::optional<PmnfaState> succ = Next(q, next)) {
            total += nodes_[IndexOf(*succ)].paths;
          }
        }
        nodes_[idx].paths = std::move(total);
        active.push_back(q);
      }
    }
    current = std::move(active);
  }
  for (Node& node : nodes_) node.log_paths = LogOf(node.paths);
}

absl::StatusOr<Pmnfa> Pmnfa::Build(const MarkovChain& chain,
                                   const Word& reference,
                                   std::size_t distance) {
  if (reference.alphabet_size() != chain.size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "word is over ", reference.alphabet_size(), " symbols, chain has ",
        chain.size(), " states"));
  }
  if (distance > reference.size()) {
    return absl::InvalidArgumentError(
        absl::StrCat("distance ", distance, " exceeds word length ",
                     reference.size()));
  }
  Pmnfa pmnfa(chain, reference, distance);
  pmnfa.Synthesize();
  if (pmnfa.PathCount(pmnfa.initial()) == 0) {
    return absl::FailedPreconditionError(absl::StrCat(
        "no feasible word lies at distance ", distance, " from the input"));
  }
  return pmnfa;
}

bool Pmnfa::Accepts(const Word& word) const {
  if (word.size() != length() || word.alphabet_size() != num_states_) {
    return false;
  }
  std::optional<PmnfaState> q = initial();
  for (std::size_t i = 0; i < word.size() && q; ++i) q = Next(*q, word[i]);
  return q && q->mismatches == distance_;
}

const BigInt& Pmnfa::PathCount(PmnfaState q) const {
  return nodes_[IndexOf(q)].paths;
}

BigRational Pmnfa::TransitionProbability(PmnfaState q,
                                         Symbol next_state) const {
  std::optional<PmnfaState> next = Next(q, next_state);
  if (!next || PathCount(q) == 0) return 0;
  return BigRational(PathCount(*next), PathCount(q));
}

BigRational Pmnfa::PathProbability(const Word& word) const {
  if (word.size() != length() || word.alphabet_size() != num_states_) {
    return 0;
  }
  BigRational p = 1;
  PmnfaState q = initial();
  for (std::size_t i = 0; i < word.size(); ++i) {
    std::optional<PmnfaState> next = Next(q, word[i]);
    if (!next) return 0;
    p *= TransitionProbability(q, word[i]);
    q = *next;
  }
  return q.mismatches == distance_ ? p : BigRational(0);
}

Word Pmnfa::SampleRun(Rng& rng) const {
  std::vector<Symbol> out;
  out.reserve(length());
  std::vector<long double> weights;
  std::vector<PmnfaState> targets;
  PmnfaState q = initial();
  for (std::size_t i = 0; i < length(); ++i) {
    const long double log_here = nodes_[IndexOf(q)].log_paths;
    weights.clear();
    targets.clear();
    for (Symbol next : successors_[q.chain_state]) {
      std::optional<PmnfaState> succ = Next(q, next);
      if (!succ) continue;
      const Node& node = nodes_[IndexOf(*succ)];
      if (node.paths == 0) continue;
      weights.push_back(std::exp(node.log_paths - log_here));
      targets.push_back(*succ);
    }
    q = targets[SampleIndex(weights, rng.Uniform())];
    out.push_back(q.chain_state);
  }
  return *Word::Create(std::move(out), num_states_);
}

MarkovOfflineMechanism::MarkovOfflineMechanism(MarkovChain chain, Word input,
                                               FeasibleDistanceCounts counts,
                                               DistanceDistribution distances)
    : chain_(std::move(chain)),
      input_(std::move(input)),
      counts_(std::move(counts)),
      distances_(std::move(distances)),
      cache_(std::make_shared<Cache>()) {
  cache_->automata.resize(input_.size() + 1);
}

absl::StatusOr<MarkovOfflineMechanism> MarkovOfflineMechanism::Create(
    const MarkovChain& chain, const Word& input, double epsilon, int k) {
  if (absl::Status s = MechanismConfig{epsilon, k, 0}.Validate(); !s.ok()) {
    return s;
  }
  if (absl::Status s = chain.CheckFeasible(input); !s.ok()) return s;
  absl::StatusOr<FeasibleDistanceCounts> counts =
      CountFeasibleAtDistance(chain, input);
  if (!counts.ok()) return counts.status();
  const long double decay =
      static_cast<long double>(epsilon) / (2.0L * static_cast<long double>(k));
  std::vector<long double> log_weights;
  for (std::size_t l = 0; l < counts->counts.size(); ++l) {
    log_weights.push_back(LogOf(counts->counts[l]) -
                          decay * static_cast<long double>(l));
  }
  absl::StatusOr<DistanceDistribution> distances =
      DistanceDistribution::FromLogWeights(std::move(log_weights));
  if (!distances.ok()) return distances.status();
  return MarkovOfflineMechanism(chain, input, *std::move(counts),
                                *std::move(distances));
}

bool MarkovOfflineMechanism::degenerate() const {
  for (std::size_t l = 1; l < counts_.counts.size(); ++l) {
    if (counts_.counts[l] > 0) return false;
  }
  return true;
}

const Pmnfa& MarkovOfflineMechanism::AutomatonFor(std::size_t distance) const {
  std::lock_guard<std::mutex> lock(cache_->mu);
  std::unique_ptr<const Pmnfa>& slot = cache_->automata.at(distance);
  if (!slot) {
    slot = std::make_unique<const Pmnfa>(
        *Pmnfa::Build(chain_, input_, distance));
  }
  return *slot;
}

Word MarkovOfflineMechanism::Sample(Rng& rng) const {
  const std::size_t distance = distances_.Sample(rng);
  return AutomatonFor(distance).SampleRun(rng);
}

absl::StatusOr<Word> PrivatizeMarkovOffline(const MarkovChain& chain,
                                            const Word& input,
                                            const MechanismConfig& cfg) {
  if (absl::Status s = cfg.Validate(); !s.ok()) return s;
  absl::StatusOr<MarkovOfflineMechanism> mechanism =
      MarkovOfflineMechanism::Create(chain, input, cfg.epsilon, cfg.k);
  if (!mechanism.ok()) return mechanism.status();
  Rng rng(cfg.seed);
  return mechanism->Sample(rng);
}

MarkovOnlinePolicy::MarkovOnlinePolicy(const MarkovChain& chain,
                                       double epsilon, int k,
                                       std::optional<long double> forced_tau)
    : successors_(chain.size()),
      reachable_(chain.size(), std::vector<char>(chain.size(), 0)),
      decay_(std::exp(-static_cast<long double>(epsilon) /
                      static_cast<long double>(k))),
      forced_tau_(forced_tau) {
  const std::size_t num = chain.size();
  for (Symbol s = 0; s < num; ++s) {
    auto c = chain.Successors(s);
    successors_[s].assign(c.begin(), c.end());
    for (Symbol t : c) reachable_[s][t] = 1;
  }
  std::size_t offset = 0;
  for (Symbol prev = 0; prev < num; ++prev) {
    row_offset_.push_back(offset);
    offset += successors_[prev].size() * num;
  }
  table_.reserve(offset);
  for (Symbol prev = 0; prev < num; ++prev) {
    for (Symbol input = 0; input < num; ++input) {
      for (Symbol out : successors_[prev]) {
        table_.push_back(Probability(out, input, prev));
      }
    }
  }
}

absl::StatusOr<MarkovOnlinePolicy> MarkovOnlinePolicy::Create(
    const MarkovChain& chain, double epsilon, int k) {
  if (absl::Status s = MechanismConfig{epsilon, k, 0}.Validate(); !s.ok()) {
    return s;
  }
  return MarkovOnlinePolicy(chain, epsilon, k, std::nullopt);
}

absl::StatusOr<MarkovOnlinePolicy> MarkovOnlinePolicy::WithTau(
    const MarkovChain& chain, long double tau) {
  if (!(tau >= 0.0L && tau <= 1.0L)) {
    return absl::InvalidArgumentError("tau must lie in [0, 1]");
  }
  return MarkovOnlinePolicy(chain, 0.0, 1, tau);
}

bool MarkovOnlinePolicy::Reachable(Symbol input,
                                   Symbol previous_output) const {
  return reachable_[previous_output][input] != 0;
}

long double MarkovOnlinePolicy::Tau(Symbol /*input*/,
                                    Symbol previous_output) const {
  if (forced_tau_) return *forced_tau_;
  const long double n =
      static_cast<long double>(successors_[previous_output].size());
  return 1.0L / ((n - 1.0L) * decay_ + 1.0L);
}

long double MarkovOnlinePolicy::Probability(Symbol output, Symbol input,
                                            Symbol previous_output) const {
  if (!Reachable(output, previous_output)) return 0.0L;
  const long double n =
      static_cast<long double>(successors_[previous_output].size());
  if (!Reachable(input, previous_output)) return 1.0L / n;
  const long double tau = Tau(input, previous_output);
  if (output == input) return tau;
  return (1.0L - tau) / (n - 1.0L);
}

std::span<const long double> MarkovOnlinePolicy::Row(
    Symbol input, Symbol previous_output) const {
  const std::size_t width = successors_[previous_output].size();
  return std::span<const long double>(
      table_.data() + row_offset_[previous_output] + input * width, width);
}

absl::StatusOr<Symbol> PrivatizeMarkovOnlineStep(
    Symbol input, Symbol previous_output, const MarkovOnlinePolicy& policy,
    Rng& rng) {
  if (input >= policy.num_states() || previous_output >= policy.num_states()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "state index out of range for a chain of ", policy.num_states(),
        " states"));
  }
  std::span<const Symbol> candidates = policy.Candidates(previous_output);
  return candidates[SampleIndex(policy.Row(input, previous_output),
                                rng.Uniform())];
}

absl::StatusOr<Word> PrivatizeMarkovOnline(const Word& input,
                                           Symbol initial_output,
                                           const MarkovOnlinePolicy& policy,
                                           Rng& rng) {
  if (input.alphabet_size() != policy.num_states()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "word is over ", input.alphabet_size(), " symbols, chain has ",
        policy.num_states(), " states"));
  }
  std::vector<Symbol> out;
  out.reserve(input.size());
  Symbol previous = initial_output;
  for (Symbol s : input.symbols()) {
    absl::StatusOr<Symbol> o =
        PrivatizeMarkovOnlineStep(s, previous, policy, rng);
    if (!o.ok()) return o.status();
    out.push_back(*o);
    previous = *o;
  }
  return Word::Create(std::move(out), input.alphabet_size());
}

absl::StatusOr<Word> PrivatizeMarkovOnline(const MarkovChain& chain,
                                           const Word& input,
                                           const MechanismConfig& cfg) {
  absl::StatusOr<MarkovOnlinePolicy> policy =
      MarkovOnlinePolicy::Create(chain, cfg.epsilon, cfg.k);
  if (!policy.ok()) return policy.status();
  Rng rng(cfg.seed);
  return PrivatizeMarkovOnline(input, chain.initial(), *policy, rng);
}

}  // namespace symdp
