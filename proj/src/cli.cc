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

#include "symdp/cli.h"

#include <atomic>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "json.hpp"
#include "symdp/analytics.h"
#include "symdp/core.h"
#include "symdp/markov.h"
#include "symdp/mechanisms.h"
#include "symdp/mnfa.h"
#include "symdp/oracle.h"
#include "symdp/rng.h"

namespace symdp {
namespace {

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

absl::Status WriteFile(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) return absl::UnavailableError(absl::StrCat("cannot write ", path));
  out << content;
  out.close();
  if (!out) return absl::UnavailableError(absl::StrCat("cannot write ", path));
  return absl::OkStatus();
}

// Inline JSON when the argument starts with '[', otherwise a file path.
absl::StatusOr<Alphabet> LoadAlphabet(const std::string& spec) {
  const std::size_t first = spec.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && spec[first] == '[') {
    return Alphabet::FromJson(spec);
  }
  absl::StatusOr<std::string> text = ReadFile(spec);
  if (!text.ok()) return text.status();
  return Alphabet::FromJson(*text);
}

absl::StatusOr<MarkovChain> LoadChain(const std::string& path) {
  absl::StatusOr<std::string> text = ReadFile(path);
  if (!text.ok()) return text.status();
  return MarkovChain::FromJson(*text);
}

int Fail(const absl::Status& status, std::ostream& err) {
  err << "error: " << status.message() << "\n";
  return status.code() == absl::StatusCode::kFailedPrecondition
             ? kExitInfeasible
             : kExitUsage;
}

bool IsChainKind(MechanismKind kind) {
  return kind == MechanismKind::kMarkovOffline ||
         kind == MechanismKind::kMarkovOnline;
}

constexpr char kDegenerateWarning[] =
    "warning: only distance 0 is feasible for this input; the output equals "
    "the input and offers no privacy\n";

// The state space of a run: a chain for chain kinds, an alphabet otherwise.
struct Model {
  std::optional<MarkovChain> chain;
  std::optional<Alphabet> alphabet;

  const Alphabet& symbols() const {
    return chain ? chain->states() : *alphabet;
  }
};

absl::StatusOr<Model> LoadModel(MechanismKind kind, const std::string& chain,
                                const std::string& alphabet) {
  Model model;
  if (!chain.empty()) {
    absl::StatusOr<MarkovChain> loaded = LoadChain(chain);
    if (!loaded.ok()) return loaded.status();
    model.chain = *std::move(loaded);
  }
  if (IsChainKind(kind)) {
    if (!model.chain) {
      return absl::InvalidArgumentError(
          absl::StrCat("--chain is required for --mode ",
                       MechanismKindName(kind)));
    }
    return model;
  }
  if (!alphabet.empty()) {
    absl::StatusOr<Alphabet> loaded = LoadAlphabet(alphabet);
    if (!loaded.ok()) return loaded.status();
    model.alphabet = *std::move(loaded);
    model.chain.reset();
  } else if (model.chain) {
    model.alphabet = model.chain->states();
    model.chain.reset();
  } else {
    return absl::InvalidArgumentError(
        "--alphabet (or --chain) is required for free-alphabet modes");
  }
  return model;
}

// ---- privatize ----

struct PrivatizeArgs {
  std::string mode;
  double epsilon = 1.0;
  int k = 1;
  std::uint64_t seed = 0;
  std::string chain;
  std::string alphabet;
  std::string input;
  std::string initial;
  bool emit_distance = false;
};

int RunPrivatize(const PrivatizeArgs& args, std::ostream& out,
                 std::ostream& err) {
  absl::StatusOr<MechanismKind> kind = ParseMechanismKind(args.mode);
  if (!kind.ok()) return Fail(kind.status(), err);
  absl::StatusOr<Model> model = LoadModel(*kind, args.chain, args.alphabet);
  if (!model.ok()) return Fail(model.status(), err);
  if (!args.initial.empty()) {
    if (!model->chain) {
      return Fail(absl::InvalidArgumentError(
                      "--initial only applies to chain modes"),
                  err);
    }
    absl::StatusOr<MarkovChain> moved = model->chain->WithInitial(args.initial);
    if (!moved.ok()) return Fail(moved.status(), err);
    model->chain = *std::move(moved);
  }
  const MechanismConfig cfg{args.epsilon, args.k, args.seed};
  if (absl::Status s = cfg.Validate(); !s.ok()) return Fail(s, err);
  absl::StatusOr<Word> input =
      EncodeWord(SplitTokens(args.input), model->symbols());
  if (!input.ok()) return Fail(input.status(), err);

  absl::StatusOr<Word> output;
  switch (*kind) {
    case MechanismKind::kOffline:
      output = PrivatizeOffline(*input, cfg);
      break;
    case MechanismKind::kOnline:
      output = PrivatizeOnline(*input, cfg);
      break;
    case MechanismKind::kMarkovOffline: {
      absl::StatusOr<MarkovOfflineMechanism> mechanism =
          MarkovOfflineMechanism::Create(*model->chain, *input, cfg.epsilon,
                                         cfg.k);
      if (!mechanism.ok()) return Fail(mechanism.status(), err);
      if (mechanism->degenerate()) err << kDegenerateWarning;
      Rng rng(cfg.seed);
      output = mechanism->Sample(rng);
      break;
    }
    case MechanismKind::kMarkovOnline:
      output = PrivatizeMarkovOnline(*model->chain, *input, cfg);
      break;
  }
  if (!output.ok()) return Fail(output.status(), err);
  out << JoinTokens(DecodeWord(*output, model->symbols())) << "\n";
  if (args.emit_distance) {
    out << "distance: " << *HammingDistance(*input, *output) << "\n";
  }
  return kExitOk;
}

// ---- build-chain ----

struct BuildChainArgs {
  std::string corpus;
  std::string out;
  std::string case_mode = "truecase";
  std::string sink = "self-loop";
  std::string initial;
};

int RunBuildChain(const BuildChainArgs& args, std::ostream& out,
                  std::ostream& err) {
  TokenizerOptions options;
  if (args.case_mode == "preserve") {
    options.case_mode = CaseMode::kPreserve;
  } else if (args.case_mode == "lower") {
    options.case_mode = CaseMode::kLower;
  } else {
    options.case_mode = CaseMode::kTruecase;
  }
  options.sink =
      args.sink == "wrap" ? SinkPolicy::kWrapToFirst : SinkPolicy::kSelfLoop;
  absl::StatusOr<std::string> corpus = ReadFile(args.corpus);
  if (!corpus.ok()) return Fail(corpus.status(), err);
  absl::StatusOr<MarkovChain> chain = BuildBigram(*corpus, options);
  if (!chain.ok()) return Fail(chain.status(), err);
  if (!args.initial.empty()) {
    absl::StatusOr<MarkovChain> moved = chain->WithInitial(args.initial);
    if (!moved.ok()) return Fail(moved.status(), err);
    chain = *std::move(moved);
  }
  const std::string json = chain->ToJson();
  if (args.out.empty()) {
    out << json;
    err << "states: " << chain->size() << "\n";
    return kExitOk;
  }
  if (absl::Status s = WriteFile(args.out, json); !s.ok()) {
    return Fail(s, err);
  }
  out << "states: " << chain->size() << "\n";
  return kExitOk;
}

// ---- experiment ----

struct ExperimentArgs {
  std::string mode;
  std::string chain;
  std::string alphabet;
  std::string input;
  std::vector<double> epsilons;
  int k = 1;
  std::size_t samples = 1000;
  std::vector<std::string> initial_states;
  std::uint64_t seed = 0;
  std::string out;
  unsigned threads = 1;
};

struct Cell {
  std::string initial_label;
  std::optional<MarkovChain> chain;  // chain modes, initial state applied
  double epsilon = 0.0;
  std::uint64_t stream = 0;
  absl::Status status;
  AccuracyRow row;
};

// Fills the analytic columns and the empirical mean of one cell.
absl::Status RunCell(MechanismKind kind, const Word& input,
                     const ExperimentArgs& args, std::uint64_t seed,
                     Cell& cell) {
  AccuracyRow& row = cell.row;
  row.mode = std::string(MechanismKindName(kind));
  row.initial_state = cell.initial_label;
  row.epsilon = cell.epsilon;
  row.k = args.k;
  row.n = input.size();
  row.m_or_s = input.alphabet_size();
  Rng rng = Rng(seed).Split(cell.stream);
  std::vector<double> distances;
  distances.reserve(args.samples);
  const auto record = [&](const Word& w) {
    distances.push_back(static_cast<double>(*HammingDistance(input, w)));
  };
  switch (kind) {
    case MechanismKind::kOffline: {
      absl::StatusOr<Moments> m =
          OfflineMoments(input.size(), input.alphabet_size(), cell.epsilon,
                         args.k);
      if (!m.ok()) return m.status();
      row.expectation = static_cast<double>(m->expectation);
      row.variance = static_cast<double>(m->variance);
      absl::StatusOr<OfflineMechanism> mechanism =
          OfflineMechanism::Create(input, cell.epsilon, args.k);
      if (!mechanism.ok()) return mechanism.status();
      for (std::size_t r = 0; r < args.samples; ++r) {
        record(mechanism->Sample(rng));
      }
      break;
    }
    case MechanismKind::kOnline: {
      absl::StatusOr<Moments> m = OnlineMoments(
          input.size(), input.alphabet_size(), cell.epsilon, args.k);
      if (!m.ok()) return m.status();
      row.expectation = static_cast<double>(m->expectation);
      row.variance = static_cast<double>(m->variance);
      absl::StatusOr<OnlinePolicy> policy =
          OnlinePolicy::Create(input.alphabet_size(), cell.epsilon, args.k);
      if (!policy.ok()) return policy.status();
      for (std::size_t r = 0; r < args.samples; ++r) {
        absl::StatusOr<Word> w = PrivatizeOnline(input, *policy, rng);
        if (!w.ok()) return w.status();
        record(*w);
      }
      break;
    }
    case MechanismKind::kMarkovOffline: {
      absl::StatusOr<MarkovOfflineMechanism> mechanism =
          MarkovOfflineMechanism::Create(*cell.chain, input, cell.epsilon,
                                         args.k);
      if (!mechanism.ok()) return mechanism.status();
      absl::StatusOr<Moments> m =
          MarkovOfflineMoments(mechanism->counts(), cell.epsilon, args.k);
      if (!m.ok()) return m.status();
      absl::StatusOr<MarkovBounds> bounds =
          MarkovOfflineBounds(input.size(), *cell.chain, cell.epsilon, args.k,
                              mechanism->counts());
      if (!bounds.ok()) return bounds.status();
      row.expectation = static_cast<double>(m->expectation);
      row.variance = static_cast<double>(m->variance);
      row.lower = static_cast<double>(bounds->lower);
      row.upper = static_cast<double>(bounds->upper);
      for (std::size_t r = 0; r < args.samples; ++r) {
        record(mechanism->Sample(rng));
      }
      break;
    }
    case MechanismKind::kMarkovOnline: {
      absl::StatusOr<std::vector<long double>> law =
          MarkovOnlineDistanceLaw(*cell.chain, input, cell.epsilon, args.k);
      if (!law.ok()) return law.status();
      const Moments m = MomentsOf(*law);
      row.expectation = static_cast<double>(m.expectation);
      row.variance = static_cast<double>(m.variance);
      row.lower = static_cast<double>(MarkovOnlineApproximateExpectation(
          input.size(), cell.chain->MinSuccessorCount(), cell.epsilon,
          args.k));
      row.upper = static_cast<double>(MarkovOnlineApproximateExpectation(
          input.size(), cell.chain->MaxSuccessorCount(), cell.epsilon,
          args.k));
      absl::StatusOr<MarkovOnlinePolicy> policy =
          MarkovOnlinePolicy::Create(*cell.chain, cell.epsilon, args.k);
      if (!policy.ok()) return policy.status();
      for (std::size_t r = 0; r < args.samples; ++r) {
        absl::StatusOr<Word> w = PrivatizeMarkovOnline(
            input, cell.chain->initial(), *policy, rng);
        if (!w.ok()) return w.status();
        record(*w);
      }
      break;
    }
  }
  if (distances.size() >= 2) {
    absl::StatusOr<EmpiricalMoments> e = ComputeEmpiricalMoments(distances);
    if (!e.ok()) return e.status();
    row.empirical_mean = e->mean;
    row.empirical_se = e->se_mean;
  } else if (distances.size() == 1) {
    row.empirical_mean = distances.front();
  }
  return absl::OkStatus();
}

int RunExperiment(const ExperimentArgs& args, std::ostream& out,
                  std::ostream& err) {
  absl::StatusOr<MechanismKind> kind = ParseMechanismKind(args.mode);
  if (!kind.ok()) return Fail(kind.status(), err);
  if (args.epsilons.empty()) {
    return Fail(absl::InvalidArgumentError("--epsilons is empty"), err);
  }
  for (double e : args.epsilons) {
    if (!(e > 0.0)) {
      return Fail(absl::InvalidArgumentError(absl::StrCat(
                      "experiment epsilons must be > 0, got ", e)),
                  err);
    }
  }
  if (args.samples < 1) {
    return Fail(absl::InvalidArgumentError("--samples must be >= 1"), err);
  }
  if (args.k < 1) {
    return Fail(absl::InvalidArgumentError("--k must be >= 1"), err);
  }
  absl::StatusOr<Model> model = LoadModel(*kind, args.chain, args.alphabet);
  if (!model.ok()) return Fail(model.status(), err);
  absl::StatusOr<Word> input =
      EncodeWord(SplitTokens(args.input), model->symbols());
  if (!input.ok()) return Fail(input.status(), err);

  std::vector<std::pair<std::string, std::optional<MarkovChain>>> starts;
  if (model->chain) {
    if (args.initial_states.empty()) {
      starts.emplace_back(
          model->chain->states().token(model->chain->initial()),
          model->chain);
    }
    for (const std::string& s : args.initial_states) {
      absl::StatusOr<MarkovChain> moved = model->chain->WithInitial(s);
      if (!moved.ok()) return Fail(moved.status(), err);
      starts.emplace_back(s, *std::move(moved));
    }
  } else {
    if (!args.initial_states.empty()) {
      return Fail(absl::InvalidArgumentError(
                      "--initial-states only applies to chain modes"),
                  err);
    }
    starts.emplace_back("", std::nullopt);
  }

  std::vector<Cell> cells;
  for (const auto& [label, chain] : starts) {
    for (double e : args.epsilons) {
      Cell cell;
      cell.initial_label = label;
      cell.chain = chain;
      cell.epsilon = e;
      cell.stream = cells.size();
      cells.push_back(std::move(cell));
    }
  }
  if (*kind == MechanismKind::kMarkovOffline) {
    for (const auto& [label, chain] : starts) {
      absl::StatusOr<MarkovOfflineMechanism> probe =
          MarkovOfflineMechanism::Create(*chain, *input, args.epsilons[0],
                                         args.k);
      if (!probe.ok()) return Fail(probe.status(), err);
      if (probe->degenerate()) err << kDegenerateWarning;
    }
  }

  // Each cell owns one stream split from the seed, so results do not depend
  // on the thread count.
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      cells[i].status = RunCell(*kind, *input, args, args.seed, cells[i]);
    }
  };
  const unsigned threads = std::max(1u, args.threads);
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  std::string csv = AccuracyCsvHeader() + "\n";
  for (const Cell& cell : cells) {
    if (!cell.status.ok()) return Fail(cell.status, err);
    csv += AccuracyCsvLine(cell.row) + "\n";
  }
  if (args.out.empty()) {
    out << csv;
    return kExitOk;
  }
  if (absl::Status s = WriteFile(args.out, csv); !s.ok()) return Fail(s, err);
  out << "wrote " << cells.size() << " rows to " << args.out << "\n";
  return kExitOk;
}

// ---- verify ----

struct VerifyArgs {
  std::vector<double> epsilons = {0.1, 1.0, 5.0};
  std::size_t max_n = 3;
  bool break_tau = false;
  std::uint64_t chain_seed = 7;
  std::string out;
};

constexpr long double kEquivalenceTolerance = 1e-9L;

int RunVerify(const VerifyArgs& args, std::ostream& out, std::ostream& err) {
  for (double e : args.epsilons) {
    if (!(e >= 0.0)) {
      return Fail(absl::InvalidArgumentError("epsilons must be >= 0"), err);
    }
  }
  if (args.max_n < 1 || args.max_n > kMaxExactLength) {
    return Fail(absl::InvalidArgumentError(absl::StrCat(
                    "--max-n must lie in [1, ", kMaxExactLength, "]")),
                err);
  }
  const MarkovChain example = ExampleChain();
  const MarkovChain random = RandomChain(4, args.chain_seed);
  const std::vector<std::pair<std::string, const MarkovChain*>> chains = {
      {"example", &example}, {"random", &random}};
  std::optional<long double> forced;
  if (args.break_tau) forced = 1.0L;

  nlohmann::ordered_json dp = nlohmann::ordered_json::array();
  nlohmann::ordered_json equivalence = nlohmann::ordered_json::array();
  std::size_t dp_failed = 0;
  std::size_t equivalence_failed = 0;
  std::string first_failure;

  const auto check_dp = [&](const MechanismDescriptor& d, std::size_t n,
                            double e, int k,
                            const std::string& chain_name) -> absl::Status {
    absl::StatusOr<DpReport> report = VerifyDp(d, n, e, k);
    if (!report.ok()) return report.status();
    nlohmann::ordered_json entry = nlohmann::ordered_json::parse(
        report->ToJson(d.chain ? &d.chain->states() : nullptr));
    if (!chain_name.empty()) entry["chain"] = chain_name;
    dp.push_back(std::move(entry));
    if (!report->passed) {
      ++dp_failed;
      if (first_failure.empty()) {
        first_failure = absl::StrCat(
            "dp ", MechanismKindName(d.kind), chain_name.empty() ? "" : " ",
            chain_name, " n=", n, " m=", report->alphabet_size, " k=", k,
            " epsilon=", e, ": max log-ratio ",
            report->unbounded()
                ? std::string("unbounded")
                : absl::StrFormat("%.12Lg", report->max_log_ratio));
      }
    }
    return absl::OkStatus();
  };

  // Worst pointwise gap between the mechanism's exact law and the
  // exponential mechanism, over every admissible input.
  const auto check_equivalence =
      [&](const MechanismDescriptor& d, std::size_t n, double e, int k,
          const std::string& chain_name) -> absl::Status {
    absl::StatusOr<std::vector<Word>> inputs =
        d.chain ? EnumerateFeasibleWords(*d.chain, n)
                : EnumerateWords(n, d.alphabet_size);
    if (!inputs.ok()) return inputs.status();
    long double worst = 0.0L;
    for (const Word& input : *inputs) {
      absl::StatusOr<OutputDistribution> exact =
          ExactMechanismDistribution(d, input, e, k);
      if (!exact.ok()) return exact.status();
      absl::StatusOr<OutputDistribution> reference =
          d.chain ? ExponentialMechanismDistribution(*d.chain, input, e, k)
                  : ExponentialMechanismDistribution(input, e, k);
      if (!reference.ok()) return reference.status();
      absl::StatusOr<long double> gap = MaxAbsDifference(*exact, *reference);
      if (!gap.ok()) return gap.status();
      worst = std::max(worst, *gap);
    }
    const bool passed = worst <= kEquivalenceTolerance;
    nlohmann::ordered_json entry;
    entry["mechanism"] = std::string(MechanismKindName(d.kind));
    if (!chain_name.empty()) entry["chain"] = chain_name;
    entry["n"] = n;
    entry["alphabet_size"] = d.chain ? d.chain->size() : d.alphabet_size;
    entry["epsilon"] = e;
    entry["k"] = k;
    entry["inputs"] = inputs->size();
    entry["max_abs_difference"] = static_cast<double>(worst);
    entry["passed"] = passed;
    equivalence.push_back(std::move(entry));
    if (!passed) {
      ++equivalence_failed;
      if (first_failure.empty()) {
        first_failure = absl::StrCat("equivalence ", MechanismKindName(d.kind),
                                     " n=", n, " epsilon=", e, " k=", k);
      }
    }
    return absl::OkStatus();
  };

  for (double e : args.epsilons) {
    for (int k : {1, 2}) {
      for (std::size_t n = 1; n <= args.max_n; ++n) {
        for (std::size_t m : {2, 3}) {
          MechanismDescriptor offline{MechanismKind::kOffline, m, nullptr,
                                      std::nullopt};
          MechanismDescriptor online{MechanismKind::kOnline, m, nullptr,
                                     forced};
          for (const MechanismDescriptor& d : {offline, online}) {
            if (absl::Status s = check_dp(d, n, e, k, ""); !s.ok()) {
              return Fail(s, err);
            }
          }
          if (absl::Status s = check_equivalence(offline, n, e, k, "");
              !s.ok()) {
            return Fail(s, err);
          }
        }
        for (const auto& [name, chain] : chains) {
          MechanismDescriptor offline{MechanismKind::kMarkovOffline,
                                      chain->size(), chain, std::nullopt};
          MechanismDescriptor online{MechanismKind::kMarkovOnline,
                                     chain->size(), chain, forced};
          for (const MechanismDescriptor& d : {offline, online}) {
            if (absl::Status s = check_dp(d, n, e, k, name); !s.ok()) {
              return Fail(s, err);
            }
          }
          if (absl::Status s = check_equivalence(offline, n, e, k, name);
              !s.ok()) {
            return Fail(s, err);
          }
        }
      }
    }
  }

  const bool passed = dp_failed == 0 && equivalence_failed == 0;
  out << "dp checks: " << dp.size() - dp_failed << " passed, " << dp_failed
      << " failed\n";
  out << "equivalence checks: " << equivalence.size() - equivalence_failed
      << " passed, " << equivalence_failed << " failed\n";
  if (!first_failure.empty()) out << "first failure: " << first_failure << "\n";
  out << (passed ? "PASS" : "FAIL") << "\n";
  if (!args.out.empty()) {
    nlohmann::ordered_json report;
    report["passed"] = passed;
    report["break_tau"] = args.break_tau;
    report["dp"] = std::move(dp);
    report["equivalence"] = std::move(equivalence);
    if (absl::Status s = WriteFile(args.out, report.dump(2) + "\n"); !s.ok()) {
      return Fail(s, err);
    }
  }
  return passed ? kExitOk : kExitVerificationFailed;
}

// ---- export-mnfa ----

struct ExportArgs {
  std::string alphabet;
  std::string input;
  std::size_t distance = 0;
  std::string out;
};

int RunExport(const ExportArgs& args, std::ostream& out, std::ostream& err) {
  absl::StatusOr<Alphabet> alphabet = LoadAlphabet(args.alphabet);
  if (!alphabet.ok()) return Fail(alphabet.status(), err);
  absl::StatusOr<Word> input = EncodeWord(SplitTokens(args.input), *alphabet);
  if (!input.ok()) return Fail(input.status(), err);
  absl::StatusOr<Mnfa> mnfa = Mnfa::BuildWithPolicy(*input, args.distance);
  if (!mnfa.ok()) return Fail(mnfa.status(), err);
  const std::string dot = mnfa->ToDot(&*alphabet);
  if (args.out.empty()) {
    out << dot;
    return kExitOk;
  }
  if (absl::Status s = WriteFile(args.out, dot); !s.ok()) return Fail(s, err);
  return kExitOk;
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Word-level differential privacy for symbolic sequences",
               "symdp"};
  app.require_subcommand(1);

  PrivatizeArgs privatize;
  CLI::App* p = app.add_subcommand("privatize", "Privatize one word");
  p->add_option("--mode", privatize.mode,
                "offline | online | mc-offline | mc-online")
      ->required();
  p->add_option("--epsilon", privatize.epsilon, "Privacy level (>= 0)")
      ->required();
  p->add_option("--k", privatize.k, "Adjacency parameter (>= 1)");
  p->add_option("--seed", privatize.seed, "Randomness seed");
  p->add_option("--chain", privatize.chain, "Markov chain JSON file");
  p->add_option("--alphabet", privatize.alphabet,
                "Alphabet JSON array, inline or as a file");
  p->add_option("--input", privatize.input, "Space-separated input tokens")
      ->required();
  p->add_option("--initial", privatize.initial,
                "Override the chain's initial state");
  p->add_flag("--emit-distance", privatize.emit_distance,
              "Also print the Hamming distance to the input");

  BuildChainArgs build;
  CLI::App* b =
      app.add_subcommand("build-chain", "Build a bigram chain from text");
  b->add_option("--corpus", build.corpus, "UTF-8 text file")->required();
  b->add_option("--out", build.out, "Output JSON path (default: stdout)");
  b->add_option("--case", build.case_mode, "preserve | lower | truecase")
      ->check(CLI::IsMember({"preserve", "lower", "truecase"}));
  b->add_option("--sink", build.sink,
                "Successor of a token with none: self-loop | wrap")
      ->check(CLI::IsMember({"self-loop", "wrap"}));
  b->add_option("--initial", build.initial,
                "Initial state (default: first token)");

  ExperimentArgs experiment;
  CLI::App* x = app.add_subcommand(
      "experiment", "Mean error versus epsilon, written as CSV");
  x->add_option("--mode", experiment.mode,
                "offline | online | mc-offline | mc-online")
      ->required();
  x->add_option("--chain", experiment.chain, "Markov chain JSON file");
  x->add_option("--alphabet", experiment.alphabet,
                "Alphabet JSON array, inline or as a file");
  x->add_option("--input", experiment.input, "Space-separated input tokens")
      ->required();
  x->add_option("--epsilons", experiment.epsilons,
                "Comma-separated epsilon grid (each > 0)")
      ->delimiter(',')
      ->required();
  x->add_option("--k", experiment.k, "Adjacency parameter (>= 1)");
  x->add_option("--samples", experiment.samples, "Samples per cell");
  x->add_option("--initial-states", experiment.initial_states,
                "Comma-separated initial states (chain modes)")
      ->delimiter(',');
  x->add_option("--seed", experiment.seed, "Randomness seed");
  x->add_option("--out", experiment.out, "CSV path (default: stdout)");
  x->add_option("--threads", experiment.threads, "Worker threads");

  VerifyArgs verify;
  CLI::App* v = app.add_subcommand(
      "verify", "Exhaustive DP and oracle-equivalence checks");
  v->add_option("--epsilons", verify.epsilons, "Comma-separated epsilons")
      ->delimiter(',');
  v->add_option("--max-n", verify.max_n, "Largest word length");
  v->add_flag("--break-tau", verify.break_tau,
              "Negative control: force the online correct-transition "
              "probability to 1");
  v->add_option("--chain-seed", verify.chain_seed,
                "Seed of the random test chain");
  v->add_option("--out", verify.out, "JSON report path");

  ExportArgs exported;
  CLI::App* e = app.add_subcommand(
      "export-mnfa", "Write the distance automaton and policy as DOT");
  e->add_option("--alphabet", exported.alphabet,
                "Alphabet JSON array, inline or as a file")
      ->required();
  e->add_option("--input", exported.input, "Space-separated input tokens")
      ->required();
  e->add_option("--distance", exported.distance, "Hamming distance")
      ->required();
  e->add_option("--out", exported.out, "DOT path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& error) {
    const int code = app.exit(error, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  if (p->parsed()) return RunPrivatize(privatize, out, err);
  if (b->parsed()) return RunBuildChain(build, out, err);
  if (x->parsed()) return RunExperiment(experiment, out, err);
  if (v->parsed()) return RunVerify(verify, out, err);
  if (e->parsed()) return RunExport(exported, out, err);
  return kExitUsage;
}

}  // namespace symdp
