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

#include <map>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "symdp/bigint.h"
#include "symdp/rng.h"
#include "test_util.h"

namespace symdp {
namespace {

using testing::AllWords;
using testing::Choose;
using testing::Distance;
using testing::Power;
using testing::Symbols;
using testing::ToSymbols;
using testing::ToWord;

Word Abc() { return ToWord({0, 1, 2}, 3); }

TEST(BigIntTest, BinomialAndLogs) {
  EXPECT_EQ(Binomial(10, 3), 120);
  EXPECT_EQ(Binomial(3, 5), 0);
  BigInt huge = BigInt(1) << 4000;
  EXPECT_NEAR(static_cast<double>(LogOf(huge)), 4000 * std::log(2.0), 1e-9);
  EXPECT_TRUE(std::isinf(LogOf(BigInt(0))));
  EXPECT_NEAR(static_cast<double>(ToLongDouble(BigRational(1, 3))), 1.0 / 3,
              1e-15);
  BigRational tiny(BigInt(1), huge);
  EXPECT_NEAR(static_cast<double>(std::log(ToLongDouble(tiny))),
              -4000 * std::log(2.0), 1e-6);
}

TEST(MnfaTest, RejectsImpossibleDistances) {
  EXPECT_FALSE(Mnfa::Build(Abc(), 4).ok());
  EXPECT_EQ(Mnfa::Build(ToWord({0, 0}, 1), 1).status().code(),
            absl::StatusCode::kFailedPrecondition);
  EXPECT_TRUE(Mnfa::BuildWithPolicy(ToWord({0, 0}, 1), 0).ok());
}

TEST(MnfaTest, KeepsOnlyBandStates) {
  Mnfa mnfa = *Mnfa::Build(Abc(), 2);
  // Layers 0..3 hold e in {0}, {0,1}, {1,2}, {2}.
  EXPECT_EQ(mnfa.num_states(), 6u);
  EXPECT_TRUE(mnfa.Contains({1, 1}));
  EXPECT_FALSE(mnfa.Contains({2, 0}));
  EXPECT_FALSE(mnfa.Contains({1, 2}));
  EXPECT_EQ(mnfa.Next({0, 0}, 0), (MnfaState{1, 0}));
  EXPECT_EQ(mnfa.Next({0, 0}, 2), (MnfaState{1, 1}));
  EXPECT_FALSE(mnfa.Next({2, 2}, 1).has_value());  // would leave e = 2
}

TEST(MnfaTest, AcceptsExactlyTheDistanceClass) {
  for (std::size_t j = 0; j <= 3; ++j) {
    Mnfa mnfa = *Mnfa::Build(Abc(), j);
    for (const Symbols& w : AllWords(3, 3)) {
      EXPECT_EQ(mnfa.Accepts(ToWord(w, 3)), Distance(w, {0, 1, 2}) == j);
    }
  }
}

TEST(MnfaTest, InitialPathCountForAbcAtDistanceTwo) {
  Mnfa mnfa = *Mnfa::BuildWithPolicy(Abc(), 2);
  EXPECT_EQ(mnfa.PathCount(mnfa.initial()), 12);
  EXPECT_EQ(mnfa.PathCount(mnfa.accepting()), 1);
}

TEST(MnfaTest, PathCountsMatchEnumeratedCompletions) {
  const Symbols ref = {1, 0, 2, 2};
  const std::size_t m = 3;
  for (std::size_t j = 0; j <= ref.size(); ++j) {
    Mnfa mnfa = *Mnfa::BuildWithPolicy(ToWord(ref, m), j);
    for (const MnfaState& q : mnfa.States()) {
      const std::size_t rest = ref.size() - q.emitted;
      Symbols tail(ref.begin() + q.emitted, ref.end());
      std::uint64_t count = 0;
      for (const Symbols& w : AllWords(rest, m)) {
        if (q.mismatches + Distance(w, tail) == j) ++count;
      }
      EXPECT_EQ(mnfa.PathCount(q), count)
          << "j=" << j << " q=(" << q.emitted << "," << q.mismatches << ")";
      EXPECT_EQ(mnfa.PathCount(q),
                Choose(rest, j - q.mismatches) *
                    Power(m - 1, j - q.mismatches));
    }
  }
}

TEST(MnfaTest, PolicyMakesDistanceClassUniform) {
  Mnfa mnfa = *Mnfa::BuildWithPolicy(Abc(), 2);
  BigRational total = 0;
  std::size_t accepted = 0;
  for (const Symbols& w : AllWords(3, 3)) {
    BigRational p = mnfa.PathProbability(ToWord(w, 3));
    if (Distance(w, {0, 1, 2}) == 2) {
      ++accepted;
      EXPECT_EQ(p, BigRational(1, 12));
    } else {
      EXPECT_EQ(p, 0);
    }
    total += p;
  }
  EXPECT_EQ(accepted, 12u);
  EXPECT_EQ(total, 1);
}

TEST(MnfaTest, TransitionProbabilitiesSumToOne) {
  Mnfa mnfa = *Mnfa::BuildWithPolicy(ToWord({0, 1, 2, 3, 0}, 4), 3);
  for (const MnfaState& q : mnfa.States()) {
    if (q.emitted == mnfa.length()) continue;
    BigRational sum = 0;
    for (Symbol s = 0; s < 4; ++s) sum += mnfa.TransitionProbability(q, s);
    EXPECT_EQ(sum, 1);
  }
}

TEST(MnfaTest, SampledRunsAreUniformOverDistanceClass) {
  Mnfa mnfa = *Mnfa::BuildWithPolicy(Abc(), 2);
  Rng rng(2024);
  std::map<Symbols, int> counts;
  const int samples = 24000;
  for (int i = 0; i < samples; ++i) {
    Word w = mnfa.SampleRun(rng);
    ASSERT_EQ(Distance(ToSymbols(w), {0, 1, 2}), 2u);
    ++counts[ToSymbols(w)];
  }
  ASSERT_EQ(counts.size(), 12u);
  const double expected = samples / 12.0;
  double chi2 = 0.0;
  for (const auto& [w, c] : counts) {
    chi2 += (c - expected) * (c - expected) / expected;
  }
  boost::math::chi_squared dist(11);
  EXPECT_GT(boost::math::cdf(boost::math::complement(dist, chi2)), 1e-3);
}

TEST(MnfaTest, DotListsStatesAndPolicy) {
  Alphabet alphabet = *Alphabet::Create({"a", "b", "c"});
  std::string dot = (*Mnfa::BuildWithPolicy(Abc(), 2)).ToDot(&alphabet);
  EXPECT_THAT(dot, ::testing::HasSubstr("digraph"));
  EXPECT_THAT(dot, ::testing::HasSubstr("V=12"));
}

}  // namespace
}  // namespace symdp
